//! JSON function descriptors.
//!
//! ```json
//! {"kind": "polynomial", "coefficients": [[0, 0], [1, 0]]}
//! {"h": {"kind": "quadratic-extremal"}, "g": {"kind": "polynomial", "coefficients": [[0, 0], [0.5, 0]]}}
//! ```
//!
//! Complex numbers are `[re, im]` pairs. Unknown keys are rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analytic::{AnalyticKind, AnalyticMap};
use crate::disk::DiskPoint;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::scalar::{lit, to_f64, Real};
use num_complex::Complex;

pub type Pair = [f64; 2];

/// Descriptor of an analytic map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionDescriptor {
    Polynomial {
        coefficients: Vec<Pair>,
    },
    Mobius {
        a: Pair,
    },
    Blaschke {
        factors: Vec<Pair>,
        #[serde(default = "unit")]
        rotation: Pair,
    },
    ScaledIdentity {
        c: Pair,
    },
    /// `((1 - |b|^2) / (1 - conj(b) z)^2)^{1/p}`.
    PowerKernel {
        b: Pair,
        p: f64,
    },
    AntiderivativeExtremal {
        beta: f64,
    },
    QuadraticExtremal,
    Composite {
        outer: Box<FunctionDescriptor>,
        inner: Box<FunctionDescriptor>,
    },
    Affine {
        inner: Box<FunctionDescriptor>,
        scale: Pair,
        offset: Pair,
    },
}

fn unit() -> Pair {
    [1.0, 0.0]
}

/// Descriptor of a harmonic map `h + conj(g)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicDescriptor {
    pub h: FunctionDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FunctionDescriptor>,
}

fn complex<T: Real>(p: Pair) -> Complex<T> {
    Complex::new(lit(p[0]), lit(p[1]))
}

fn pair<T: Real>(z: Complex<T>) -> Pair {
    [to_f64(z.re), to_f64(z.im)]
}

fn point<T: Real>(p: Pair) -> Result<DiskPoint<T>> {
    DiskPoint::new(complex(p))
}

impl FunctionDescriptor {
    pub fn to_map<T: Real>(&self) -> Result<AnalyticMap<T>> {
        Ok(match self {
            Self::Polynomial { coefficients } => {
                if coefficients.is_empty() {
                    return Err(Error::Descriptor("polynomial needs at least one coefficient".into()));
                }
                AnalyticMap::polynomial(coefficients.iter().map(|&c| complex(c)).collect())
            }
            Self::Mobius { a } => AnalyticMap::mobius(point(*a)?),
            Self::Blaschke { factors, rotation } => AnalyticMap::blaschke(
                factors.iter().map(|&a| point(a)).collect::<Result<_>>()?,
                complex(*rotation),
            )?,
            Self::ScaledIdentity { c } => AnalyticMap::scaled_identity(complex(*c))?,
            Self::PowerKernel { b, p } => {
                if !(*p > 0.0) || !p.is_finite() {
                    return Err(Error::Descriptor(format!("power-kernel needs p > 0, got {p}")));
                }
                AnalyticMap::power_kernel(point(*b)?, lit::<T>(1.0 / *p))?
            }
            Self::AntiderivativeExtremal { beta } => AnalyticMap::extremal_antiderivative(lit(*beta))?,
            Self::QuadraticExtremal => AnalyticMap::quadratic_extremal(),
            Self::Composite { outer, inner } => AnalyticMap::composite(outer.to_map()?, inner.to_map()?)?,
            Self::Affine { inner, scale, offset } => {
                AnalyticMap::affine(inner.to_map()?, complex(*scale), complex(*offset))
            }
        })
    }

    /// The descriptor of a map.
    pub fn from_map<T: Real>(f: &AnalyticMap<T>) -> Self {
        match f.kind() {
            AnalyticKind::Polynomial(c) => Self::Polynomial {
                coefficients: c.iter().map(|&z| pair(z)).collect(),
            },
            AnalyticKind::Mobius(a) => Self::Mobius { a: pair(a.value()) },
            AnalyticKind::Blaschke { factors, rotation } => Self::Blaschke {
                factors: factors.iter().map(|a| pair(a.value())).collect(),
                rotation: pair(*rotation),
            },
            AnalyticKind::ScaledIdentity(c) => Self::ScaledIdentity { c: pair(*c) },
            AnalyticKind::PowerKernel { b, exponent } => Self::PowerKernel {
                b: pair(b.value()),
                p: 1.0 / to_f64(*exponent),
            },
            AnalyticKind::ExtremalAntiderivative { beta, .. } => Self::AntiderivativeExtremal { beta: to_f64(*beta) },
            AnalyticKind::QuadraticExtremal => Self::QuadraticExtremal,
            AnalyticKind::Composite { outer, inner } => Self::Composite {
                outer: Box::new(Self::from_map(outer)),
                inner: Box::new(Self::from_map(inner)),
            },
            AnalyticKind::Affine { inner, scale, offset } => Self::Affine {
                inner: Box::new(Self::from_map(inner)),
                scale: pair(*scale),
                offset: pair(*offset),
            },
        }
    }
}

impl HarmonicDescriptor {
    /// Rejects `g` with `g(0) != 0`.
    pub fn to_map<T: Real>(&self) -> Result<HarmonicMap<T>> {
        let h = self.h.to_map()?;
        match &self.g {
            None => Ok(HarmonicMap::analytic(h)),
            Some(g) => HarmonicMap::new(h, g.to_map()?),
        }
    }
}

/// A parsed descriptor document: analytic or harmonic.
#[derive(Debug, Clone, PartialEq)]
pub enum Descriptor {
    Analytic(FunctionDescriptor),
    Harmonic(HarmonicDescriptor),
}

impl Descriptor {
    /// Documents with a top-level `h` key are harmonic.
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self> {
        let harmonic = value.as_object().map_or(false, |o| o.contains_key("h"));
        let err = |e: serde_json::Error| Error::Descriptor(e.to_string());
        if harmonic {
            Ok(Self::Harmonic(serde_json::from_value(value).map_err(err)?))
        } else {
            Ok(Self::Analytic(serde_json::from_value(value).map_err(err)?))
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Self::Analytic(d) => serde_json::to_string(d),
            Self::Harmonic(d) => serde_json::to_string(d),
        }
        .expect("descriptors serialize")
    }

    pub fn harmonic<T: Real>(&self) -> Result<HarmonicMap<T>> {
        match self {
            Self::Analytic(d) => Ok(HarmonicMap::analytic(d.to_map()?)),
            Self::Harmonic(d) => d.to_map(),
        }
    }

    /// Analytic maps only; a harmonic document is accepted when `g` is absent.
    pub fn analytic<T: Real>(&self) -> Result<AnalyticMap<T>> {
        match self {
            Self::Analytic(d) => d.to_map(),
            Self::Harmonic(HarmonicDescriptor { h, g: None }) => h.to_map(),
            Self::Harmonic(_) => Err(Error::Descriptor("expected an analytic map, got a harmonic pair".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let docs = [
            r#"{"kind":"polynomial","coefficients":[[0,0],[1,0]]}"#,
            r#"{"kind":"mobius","a":[0.5,0]}"#,
            r#"{"kind":"blaschke","factors":[[0.1,0.2],[-0.3,0]],"rotation":[0,1]}"#,
            r#"{"kind":"scaled-identity","c":[0.5,0]}"#,
            r#"{"kind":"power-kernel","b":[0.9,0],"p":2}"#,
            r#"{"kind":"antiderivative-extremal","beta":0.49012}"#,
            r#"{"kind":"quadratic-extremal"}"#,
            r#"{"kind":"composite","outer":{"kind":"quadratic-extremal"},"inner":{"kind":"mobius","a":[0.2,0]}}"#,
            r#"{"kind":"affine","inner":{"kind":"quadratic-extremal"},"scale":[2,0],"offset":[1,0]}"#,
        ];
        for d in docs {
            let parsed = Descriptor::parse(d).unwrap();
            let f = parsed.analytic::<f64>().unwrap();
            let back = FunctionDescriptor::from_map(&f);
            assert_eq!(Descriptor::Analytic(back), parsed, "{d}");
        }
    }

    #[test]
    fn kernel_value_from_descriptor() {
        let f = Descriptor::parse(r#"{"kind":"power-kernel","b":[0.9,0],"p":2}"#)
            .unwrap()
            .analytic::<f64>()
            .unwrap();
        assert!((f.eval_at(Complex::new(0.9, 0.0)).re - (1.0f64 / 0.19).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn harmonic_documents() {
        let d = Descriptor::parse(
            r#"{"h":{"kind":"polynomial","coefficients":[[0,0],[1,0]]},"g":{"kind":"polynomial","coefficients":[[0,0],[0.5,0]]}}"#,
        )
        .unwrap();
        let f = d.harmonic::<f64>().unwrap();
        assert!((f.lambda_at(Complex::new(0.2, 0.1)) - 1.5).abs() < 1e-15);
        assert!(d.analytic::<f64>().is_err());
    }

    #[test]
    fn rejects_g_with_nonzero_origin_value() {
        let d = Descriptor::parse(
            r#"{"h":{"kind":"quadratic-extremal"},"g":{"kind":"polynomial","coefficients":[[1,0],[0.5,0]]}}"#,
        )
        .unwrap();
        assert!(matches!(d.harmonic::<f64>(), Err(Error::NonCanonical(_))));
    }

    #[test]
    fn rejects_unknown_keys_and_kinds() {
        assert!(Descriptor::parse(r#"{"kind":"mobius","a":[0.5,0],"extra":1}"#).is_err());
        assert!(Descriptor::parse(r#"{"kind":"sine"}"#).is_err());
        assert!(Descriptor::parse(r#"{"h":{"kind":"quadratic-extremal"},"k":{}}"#).is_err());
        assert!(Descriptor::parse(r#"{"kind":"mobius","a":[1.5,0]}"#)
            .unwrap()
            .analytic::<f64>()
            .is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"mobius","a":[0.3,-0.1]}"#;
        assert_eq!(Descriptor::parse(text).unwrap().to_json(), text);
        let text = r#"{"h":{"kind":"quadratic-extremal"}}"#;
        assert_eq!(Descriptor::parse(text).unwrap().to_json(), text);
    }
}
