use super::ModelError;

/// Physical constants of the isothermal model.
///
/// `eps` is the inverse light speed, `k` the sound speed and `kappa` the
/// exponent of the scale factor `a(t) = |t|^kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    eps: f64,
    k: f64,
    kappa: f64,
}

impl FluidParams {
    /// Relativistic parameters: requires `eps > 0`, `0 < k < 1/eps`, `kappa > 0`.
    pub fn new(eps: f64, k: f64, kappa: f64) -> Result<Self, ModelError> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "eps",
                value: eps,
                reason: "must be positive and finite",
            });
        }
        Self::checked(eps, k, kappa)
    }

    /// The non-relativistic limit `eps = 0` (infinite light speed).
    pub fn newtonian(k: f64, kappa: f64) -> Result<Self, ModelError> {
        Self::checked(0.0, k, kappa)
    }

    fn checked(eps: f64, k: f64, kappa: f64) -> Result<Self, ModelError> {
        if !(k.is_finite() && k > 0.0) {
            return Err(ModelError::InvalidParameter { name: "k", value: k, reason: "sound speed must be positive" });
        }
        if eps * k >= 1.0 {
            return Err(ModelError::InvalidParameter {
                name: "k",
                value: k,
                reason: "sound speed must be below the light speed 1/eps",
            });
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(ModelError::InvalidParameter {
                name: "kappa",
                value: kappa,
                reason: "expansion exponent must be positive",
            });
        }
        Ok(Self { eps, k, kappa })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `1/eps`, or infinity in the Newtonian limit.
    pub fn light_speed(&self) -> f64 {
        if self.eps == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.eps
        }
    }

    pub(crate) fn eps2(&self) -> f64 {
        self.eps * self.eps
    }

    pub(crate) fn k2(&self) -> f64 {
        self.k * self.k
    }

    /// `1 + eps^2 k^2`
    pub(crate) fn momentum_factor(&self) -> f64 {
        1.0 + self.eps2() * self.k2()
    }

    /// `eps^4 k^2`
    pub(crate) fn energy_coeff(&self) -> f64 {
        let e2 = self.eps2();
        e2 * e2 * self.k2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_sound_speed_at_or_above_light_speed() {
        assert!(FluidParams::new(1.0, 1.0, 2.0).is_err());
        assert!(FluidParams::new(1.0, 2.0, 2.0).is_err());
        assert!(FluidParams::new(0.5, 1.9, 2.0).is_ok());
    }

    #[test]
    fn rejects_non_positive_values() {
        assert!(FluidParams::new(0.0, 0.5, 2.0).is_err());
        assert!(FluidParams::new(1.0, 0.0, 2.0).is_err());
        assert!(FluidParams::new(1.0, 0.5, 0.0).is_err());
        assert!(FluidParams::new(1.0, 0.5, f64::NAN).is_err());
    }

    #[test]
    fn newtonian_has_infinite_light_speed() {
        let p = FluidParams::newtonian(3.0, 1.0).unwrap();
        assert_eq!(p.light_speed(), f64::INFINITY);
        assert_eq!(p.momentum_factor(), 1.0);
        assert_eq!(p.energy_coeff(), 0.0);
    }
}
