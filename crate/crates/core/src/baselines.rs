//! Closed-form two- and three-sample rotation-vector algorithms.
//!
//! Both return the incremental rotation vector over the update interval;
//! compose with [`quat_from_rotvec`](crate::quat_from_rotvec) and
//! [`quat_mul`](crate::quat_mul).

use crate::attitude::Vec3;

pub fn classic_two_sample(d1: Vec3, d2: Vec3) -> Vec3 {
    d1 + d2 + d1.cross(d2) * (2.0 / 3.0)
}

pub fn classic_three_sample(d1: Vec3, d2: Vec3, d3: Vec3) -> Vec3 {
    d1 + d2 + d3 + d1.cross(d3) * 0.4125 + d2.cross(d3 - d1) * 0.7125
}
