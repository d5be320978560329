use super::cell::Dim;
use super::finite::FiniteSet;
use crate::error::{Error, Result};

/// How the box radius `k_n` grows with the index `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadiusSchedule {
    /// `k_n = n`.
    Identity,
    /// `k_n = scale * n + offset`.
    Affine { scale: i64, offset: i64 },
    /// `k_n = radii[n - 1]`.
    Explicit(Vec<i64>),
}

/// Centered boxes `F_n = [-k_n, k_n]^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxFolner {
    dim: Dim,
    schedule: RadiusSchedule,
}

impl BoxFolner {
    pub fn centered(dim: Dim) -> BoxFolner {
        BoxFolner {
            dim,
            schedule: RadiusSchedule::Identity,
        }
    }

    pub fn affine(dim: Dim, scale: i64, offset: i64) -> Result<BoxFolner> {
        if scale <= 0 {
            return Err(Error::Invalid(format!(
                "box radii must increase strictly, got scale {scale}"
            )));
        }
        Ok(BoxFolner {
            dim,
            schedule: RadiusSchedule::Affine { scale, offset },
        })
    }

    pub fn explicit(dim: Dim, radii: Vec<i64>) -> Result<BoxFolner> {
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("box radii must increase strictly".into()));
        }
        if radii.first().is_some_and(|&k| k < 0) {
            return Err(Error::Invalid("box radii must be nonnegative".into()));
        }
        Ok(BoxFolner {
            dim,
            schedule: RadiusSchedule::Explicit(radii),
        })
    }

    /// The schedule `k_n = (n n0 - 2r)(n0 + 1)` used for periodic approximation.
    pub fn periodic_approximation(dim: Dim, n0: i64, r: i64) -> Result<BoxFolner> {
        BoxFolner::affine(dim, n0 * (n0 + 1), -2 * r * (n0 + 1))
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn schedule(&self) -> &RadiusSchedule {
        &self.schedule
    }

    pub fn radius(&self, n: usize) -> Result<i64> {
        if n == 0 {
            return Err(Error::Invalid("Følner indices start at 1".into()));
        }
        let k = match &self.schedule {
            RadiusSchedule::Identity => n as i64,
            RadiusSchedule::Affine { scale, offset } => scale * n as i64 + offset,
            RadiusSchedule::Explicit(r) => *r
                .get(n - 1)
                .ok_or_else(|| Error::Invalid(format!("no radius given for index {n}")))?,
        };
        if k < 0 {
            return Err(Error::Invalid(format!("radius k_{n} = {k} is negative")));
        }
        Ok(k)
    }

    pub fn window(&self, n: usize) -> Result<FiniteSet> {
        Ok(FiniteSet::centered_box(self.dim, self.radius(n)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approximation_schedule_matches_formula() {
        let f = BoxFolner::periodic_approximation(Dim::One, 2, 1).unwrap();
        assert_eq!(f.radius(3).unwrap(), 12);
        assert_eq!(f.radius(4).unwrap(), 18);
        assert_eq!(f.radius(1).unwrap(), 0);
        assert!(f.radius(0).is_err());
    }

    #[test]
    fn boxes_are_nested_and_centered() {
        let f = BoxFolner::centered(Dim::Two);
        let mut prev = f.window(1).unwrap();
        for n in 2..6 {
            let w = f.window(n).unwrap();
            assert!(prev.is_subset(&w));
            assert!(w.contains(&super::super::Cell::d2(0, 0)));
            assert_eq!(w, w.negate());
            prev = w;
        }
        assert!(BoxFolner::explicit(Dim::One, vec![1, 1]).is_err());
    }
}
