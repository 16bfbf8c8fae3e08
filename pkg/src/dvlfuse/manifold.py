"""SO(3) utilities on unit quaternions.

Conventions used across the package:
  - Quaternions are stored (w, x, y, z), Hamilton product, renormalized
    after every composition so long chains do not drift.
  - Rotations map body-frame vectors into the world frame (R * v_body).
  - Axis-angle (rotation vector) tangent elements are in radians; the log
    branch is chosen so |log| <= pi with nonnegative scalar part.
"""
from __future__ import annotations

import math

import numpy as np

_SMALL_ANGLE = 1e-8


def skew(v) -> np.ndarray:
    """Antisymmetric matrix with skew(v) @ w == cross(v, w)."""
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


class Rotation:
    """Unit quaternion wrapper; immutable by convention."""

    __slots__ = ("q",)

    def __init__(self, w, x, y, z):
        n = math.sqrt(w * w + x * x + y * y + z * z)
        self.q = np.array([w / n, x / n, y / n, z / n])

    @staticmethod
    def identity() -> "Rotation":
        return Rotation(1.0, 0.0, 0.0, 0.0)

    @staticmethod
    def from_quat(q) -> "Rotation":
        return Rotation(q[0], q[1], q[2], q[3])

    @staticmethod
    def from_matrix(m) -> "Rotation":
        """Shepperd's method; picks the numerically largest pivot."""
        m = np.asarray(m, dtype=float)
        t = m[0, 0] + m[1, 1] + m[2, 2]
        if t > 0.0:
            s = math.sqrt(t + 1.0) * 2.0
            return Rotation(0.25 * s, (m[2, 1] - m[1, 2]) / s,
                            (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s)
        i = int(np.argmax([m[0, 0], m[1, 1], m[2, 2]]))
        if i == 0:
            s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2.0
            return Rotation((m[2, 1] - m[1, 2]) / s, 0.25 * s,
                            (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s)
        if i == 1:
            s = math.sqrt(1.0 - m[0, 0] + m[1, 1] - m[2, 2]) * 2.0
            return Rotation((m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s,
                            0.25 * s, (m[1, 2] + m[2, 1]) / s)
        s = math.sqrt(1.0 - m[0, 0] - m[1, 1] + m[2, 2]) * 2.0
        return Rotation((m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s,
                        (m[1, 2] + m[2, 1]) / s, 0.25 * s)

    @staticmethod
    def from_euler_zyx(roll: float, pitch: float, yaw: float) -> "Rotation":
        """R = Rz(yaw) Ry(pitch) Rx(roll)."""
        cr, sr = math.cos(roll / 2), math.sin(roll / 2)
        cp, sp = math.cos(pitch / 2), math.sin(pitch / 2)
        cy, sy = math.cos(yaw / 2), math.sin(yaw / 2)
        return Rotation(cy * cp * cr + sy * sp * sr,
                        cy * cp * sr - sy * sp * cr,
                        cy * sp * cr + sy * cp * sr,
                        sy * cp * cr - cy * sp * sr)

    def compose(self, other: "Rotation") -> "Rotation":
        a, b = self.q, other.q
        return Rotation(
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0])

    def __matmul__(self, other: "Rotation") -> "Rotation":
        return self.compose(other)

    def inverse(self) -> "Rotation":
        w, x, y, z = self.q
        return Rotation(w, -x, -y, -z)

    def rotate(self, v) -> np.ndarray:
        """Rotate a 3-vector (body -> world for a world<-body rotation)."""
        w, x, y, z = self.q
        u = np.array([x, y, z])
        uv = np.cross(u, np.asarray(v, dtype=float))
        return np.asarray(v, dtype=float) + 2.0 * (w * uv + np.cross(u, uv))

    def unrotate(self, v) -> np.ndarray:
        return self.inverse().rotate(v)

    def matrix(self) -> np.ndarray:
        w, x, y, z = self.q
        return np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)]])

    def euler_zyx(self) -> tuple:
        """(roll, pitch, yaw) of R = Rz(yaw) Ry(pitch) Rx(roll)."""
        m = self.matrix()
        pitch = math.asin(max(-1.0, min(1.0, -m[2, 0])))
        roll = math.atan2(m[2, 1], m[2, 2])
        yaw = math.atan2(m[1, 0], m[0, 0])
        return roll, pitch, yaw

    def slerp(self, other: "Rotation", alpha: float) -> "Rotation":
        """Geodesic interpolation, alpha in [0, 1]."""
        delta = so3_log(self.inverse().compose(other))
        return self.compose(so3_exp(alpha * delta))

    def angle_to(self, other: "Rotation") -> float:
        """Geodesic distance in radians."""
        return float(np.linalg.norm(so3_log(self.inverse().compose(other))))

    def __repr__(self):
        return "Rotation(w=%.9g, x=%.9g, y=%.9g, z=%.9g)" % tuple(self.q)


def so3_exp(omega) -> Rotation:
    """Axis-angle (rad) to rotation; series branch below 1e-8 rad."""
    wx, wy, wz = omega
    theta2 = wx * wx + wy * wy + wz * wz
    theta = math.sqrt(theta2)
    if theta < _SMALL_ANGLE:
        # sin(t/2)/t = 1/2 - t^2/48 + O(t^4)
        k = 0.5 - theta2 / 48.0
        return Rotation(1.0 - theta2 / 8.0, k * wx, k * wy, k * wz)
    half = 0.5 * theta
    k = math.sin(half) / theta
    return Rotation(math.cos(half), k * wx, k * wy, k * wz)


def so3_log(r: Rotation) -> np.ndarray:
    """Principal axis-angle with |log| <= pi; w >= 0 branch.

    Exactly at 180 degrees the sign is fixed toward a positive leading
    axis component (x, then y, then z) so outputs are reproducible.
    """
    w, x, y, z = r.q
    if w < 0.0 or (w == 0.0 and (x < 0.0 or (x == 0.0 and (y < 0.0 or (y == 0.0 and z < 0.0))))):
        w, x, y, z = -w, -x, -y, -z
    s = math.sqrt(x * x + y * y + z * z)
    if s < _SMALL_ANGLE:
        # theta/s = 2/w * (1 - s^2/(3 w^2)) + O(s^4)
        k = (2.0 / w) * (1.0 - (s * s) / (3.0 * w * w)) if w > 0.0 else 2.0
        return np.array([k * x, k * y, k * z])
    theta = 2.0 * math.atan2(s, w)
    k = theta / s
    return np.array([k * x, k * y, k * z])


def so3_right_jacobian(omega) -> np.ndarray:
    """J_r(w) = I - (1-cos t)/t^2 [w]x + (t - sin t)/t^3 [w]x^2."""
    omega = np.asarray(omega, dtype=float)
    theta = math.sqrt(float(omega @ omega))
    s = skew(omega)
    if theta < _SMALL_ANGLE:
        return np.eye(3) - 0.5 * s + (s @ s) / 6.0
    t2 = theta * theta
    return (np.eye(3) - ((1.0 - math.cos(theta)) / t2) * s
            + ((theta - math.sin(theta)) / (t2 * theta)) * (s @ s))


def so3_right_jacobian_inv(omega) -> np.ndarray:
    """Inverse of J_r, used when lifting rotation residuals."""
    omega = np.asarray(omega, dtype=float)
    theta = math.sqrt(float(omega @ omega))
    s = skew(omega)
    if theta < _SMALL_ANGLE:
        return np.eye(3) + 0.5 * s + (s @ s) / 12.0
    t2 = theta * theta
    k = 1.0 / t2 - (1.0 + math.cos(theta)) / (2.0 * theta * math.sin(theta))
    return np.eye(3) + 0.5 * s + k * (s @ s)
