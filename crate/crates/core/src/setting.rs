//! The shapes `(m, t, n)` and the distinguished minors of one computation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::localization::{normal_minor, LocalizationError, NormalElement};
use crate::qalgebra::{Family, MinorIndex, Shape};
use crate::tensor::Factor;

/// `O_q(M_{m,n})`, `O_q(V) = O_q(M_{m,t}) ⊗ O_q(M_{t,n})` and `O_q(GL_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Setting {
    pub m: u8,
    pub t: u8,
    pub n: u8,
}

impl Setting {
    pub fn new(m: u8, t: u8, n: u8) -> Self {
        assert!(m >= 1 && t >= 1 && n >= 1, "m, t, n must be positive");
        Setting { m, t, n }
    }

    pub fn x_shape(&self) -> Shape {
        Shape::new(Family::X, self.m, self.n)
    }

    pub fn y_shape(&self) -> Shape {
        Shape::new(Family::Y, self.m, self.t)
    }

    pub fn z_shape(&self) -> Shape {
        Shape::new(Family::Z, self.t, self.n)
    }

    /// Lower-left `t × t` block: rows `m-t+1..m`, columns `1..t`.
    pub fn lower_left(&self, rows: u8) -> MinorIndex {
        MinorIndex::solid(rows - self.t + 1..=rows, 1..=self.t)
    }

    pub fn d_x(&self) -> Result<Arc<NormalElement>, LocalizationError> {
        normal_minor(self.x_shape(), &self.lower_left(self.m))
    }

    pub fn d_y(&self) -> Result<Arc<NormalElement>, LocalizationError> {
        normal_minor(self.y_shape(), &self.lower_left(self.m))
    }

    pub fn d_z(&self) -> Result<Arc<NormalElement>, LocalizationError> {
        normal_minor(self.z_shape(), &MinorIndex::solid(1..=self.t, 1..=self.t))
    }

    pub fn x_factor(&self) -> Factor {
        Factor::plain(self.x_shape())
    }

    pub fn y_factor(&self, localized: bool) -> Factor {
        if localized {
            Factor::localized(self.d_y().expect("d_Y is normal"))
        } else {
            Factor::plain(self.y_shape())
        }
    }

    pub fn z_factor(&self, localized: bool) -> Factor {
        if localized {
            Factor::localized(self.d_z().expect("d_Z is normal"))
        } else {
            Factor::plain(self.z_shape())
        }
    }

    pub fn v_factors(&self, localized: bool) -> Vec<Factor> {
        vec![self.y_factor(localized), self.z_factor(localized)]
    }
}
