use crate::error::{Error, Result};
use crate::linalg::{dot, squared_distance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Linear,
    Polynomial,
    Gaussian,
    Tanh,
    Precomputed,
}

/// A kernel function over real feature vectors, or a marker that the kernel
/// matrix is supplied directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// `x·y`
    Linear,
    /// `(x·y + 1)^degree`
    Polynomial { degree: u32 },
    /// `exp(-‖x - y‖² / bandwidth)`
    Gaussian { bandwidth: f64 },
    /// `tanh(scale · x·y + offset)`
    Tanh { scale: f64, offset: f64 },
    /// Kernel values are given as a matrix; `kernel_eval` is undefined.
    Precomputed,
}

impl Default for KernelSpec {
    fn default() -> Self {
        KernelSpec::Gaussian { bandwidth: 1.0 }
    }
}

impl KernelSpec {
    pub fn kind(&self) -> KernelKind {
        match self {
            KernelSpec::Linear => KernelKind::Linear,
            KernelSpec::Polynomial { .. } => KernelKind::Polynomial,
            KernelSpec::Gaussian { .. } => KernelKind::Gaussian,
            KernelSpec::Tanh { .. } => KernelKind::Tanh,
            KernelSpec::Precomputed => KernelKind::Precomputed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Polynomial { degree } if degree < 1 => Err(Error::Config(
                "polynomial kernel degree must be at least 1".into(),
            )),
            KernelSpec::Gaussian { bandwidth } if !(bandwidth > 0.0 && bandwidth.is_finite()) => {
                Err(Error::Config(format!(
                    "gaussian kernel bandwidth must be positive, got {bandwidth}"
                )))
            }
            KernelSpec::Tanh { scale, offset } if !(scale.is_finite() && offset.is_finite()) => {
                Err(Error::Config("tanh kernel parameters must be finite".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Parses `linear`, `poly:<degree>`, `gaussian:<bandwidth>`,
/// `tanh:<scale>,<offset>` or `precomputed`; parameters may be omitted for
/// their defaults (degree 2, bandwidth 1, scale 1, offset 0).
impl std::str::FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, args) = s.split_once(':').unwrap_or((s.as_str(), ""));
        let bad = || Error::Config(format!("cannot parse kernel {s:?}"));
        let num = |v: &str, default: f64| -> Result<f64> {
            if v.is_empty() {
                Ok(default)
            } else {
                v.trim().parse().map_err(|_| bad())
            }
        };
        let spec = match name {
            "linear" => KernelSpec::Linear,
            "poly" | "polynomial" => KernelSpec::Polynomial {
                degree: if args.is_empty() { 2 } else { args.trim().parse().map_err(|_| bad())? },
            },
            "gaussian" | "rbf" => KernelSpec::Gaussian {
                bandwidth: num(args, 1.0)?,
            },
            "tanh" | "sigmoid" => {
                let (a, b) = args.split_once(',').unwrap_or((args, ""));
                KernelSpec::Tanh {
                    scale: num(a, 1.0)?,
                    offset: num(b, 0.0)?,
                }
            }
            "precomputed" => KernelSpec::Precomputed,
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn kernel_eval(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Input(format!(
            "kernel inputs differ in dimension: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    spec.validate()?;
    Ok(match *spec {
        KernelSpec::Linear => dot(x, y),
        KernelSpec::Polynomial { degree } => (dot(x, y) + 1.0).powi(degree as i32),
        KernelSpec::Gaussian { bandwidth } => (-squared_distance(x, y) / bandwidth).exp(),
        KernelSpec::Tanh { scale, offset } => (scale * dot(x, y) + offset).tanh(),
        KernelSpec::Precomputed => {
            return Err(Error::Input(
                "a precomputed kernel cannot be evaluated on feature vectors".into(),
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_specs_parse() {
        assert_eq!("linear".parse::<KernelSpec>().unwrap(), KernelSpec::Linear);
        assert_eq!("poly:3".parse::<KernelSpec>().unwrap(), KernelSpec::Polynomial { degree: 3 });
        assert_eq!("RBF".parse::<KernelSpec>().unwrap(), KernelSpec::Gaussian { bandwidth: 1.0 });
        assert_eq!(
            "tanh:0.5,-1".parse::<KernelSpec>().unwrap(),
            KernelSpec::Tanh { scale: 0.5, offset: -1.0 }
        );
        assert!("gaussian:-1".parse::<KernelSpec>().is_err());
        assert!("cubic".parse::<KernelSpec>().is_err());
    }
    use proptest::prelude::*;

    #[test]
    fn gaussian_of_identical_points_is_one() {
        let k = KernelSpec::Gaussian { bandwidth: 0.37 };
        assert_eq!(kernel_eval(&k, &[3.0, -1.0], &[3.0, -1.0]).unwrap(), 1.0);
    }

    #[test]
    fn polynomial_degree_one_on_orthogonal_vectors() {
        let k = KernelSpec::Polynomial { degree: 1 };
        assert_eq!(kernel_eval(&k, &[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn gaussian_hand_value() {
        // ‖(0,0) - (1,1)‖² = 2, divided by β = 2 gives 1.
        let k = KernelSpec::Gaussian { bandwidth: 2.0 };
        let v = kernel_eval(&k, &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!((v - (-1.0_f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn tanh_hand_value() {
        let k = KernelSpec::Tanh {
            scale: 0.5,
            offset: -1.0,
        };
        let v = kernel_eval(&k, &[2.0, 1.0], &[1.0, 2.0]).unwrap();
        assert!((v - (0.5 * 4.0 - 1.0_f64).tanh()).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_and_invalid_params() {
        let k = KernelSpec::Linear;
        assert!(matches!(
            kernel_eval(&k, &[1.0], &[1.0, 2.0]),
            Err(Error::Input(_))
        ));
        assert!(kernel_eval(&KernelSpec::Gaussian { bandwidth: 0.0 }, &[1.0], &[1.0]).is_err());
        assert!(kernel_eval(&KernelSpec::Polynomial { degree: 0 }, &[1.0], &[1.0]).is_err());
        assert!(kernel_eval(&KernelSpec::Precomputed, &[1.0], &[1.0]).is_err());
    }

    fn specs() -> impl Strategy<Value = KernelSpec> {
        prop_oneof![
            Just(KernelSpec::Linear),
            (1u32..5).prop_map(|degree| KernelSpec::Polynomial { degree }),
            (0.01f64..10.0).prop_map(|bandwidth| KernelSpec::Gaussian { bandwidth }),
            (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(scale, offset)| KernelSpec::Tanh { scale, offset }),
        ]
    }

    proptest! {
        #[test]
        fn kernels_are_symmetric(spec in specs(), xy in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..6)) {
            let (x, y): (Vec<f64>, Vec<f64>) = xy.into_iter().unzip();
            prop_assert_eq!(kernel_eval(&spec, &x, &y).unwrap(), kernel_eval(&spec, &y, &x).unwrap());
            if let KernelSpec::Gaussian { .. } = spec {
                prop_assert_eq!(kernel_eval(&spec, &x, &x).unwrap(), 1.0);
            }
        }
    }
}
