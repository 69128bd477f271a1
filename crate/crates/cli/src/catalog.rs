//! Built-in function catalog.

use blochkit::descriptor::{Descriptor, FunctionDescriptor};

use crate::error::CliError;
use crate::parse_complex;

/// A catalog pattern and the role its maps play.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub pattern: &'static str,
    pub role: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        pattern: "eta",
        role: "quadratic extremal -(3 sqrt 3 / 4) z^2; classical Bloch seminorm 1 at z = 1/sqrt 3",
    },
    CatalogEntry {
        pattern: "f-beta:B",
        role: "antiderivative extremal of the sharp Lipschitz bound, 0 < B <= 1",
    },
    CatalogEntry {
        pattern: "identity",
        role: "identity symbol; divergent Bloch-to-Hardy criterion, unbounded Hardy-to-Bloch verdict",
    },
    CatalogEntry {
        pattern: "half-identity",
        role: "z/2; a symbol with sup |phi| < 1",
    },
    CatalogEntry {
        pattern: "mobius:A",
        role: "disk automorphism (A - z)/(1 - conj(A) z), A real or RE,IM",
    },
    CatalogEntry {
        pattern: "kernel:B:P",
        role: "normalized reproducing-kernel power ((1 - |B|^2)/(1 - conj(B) z)^2)^(1/P), unit Hardy p-norm",
    },
    CatalogEntry {
        pattern: "monomial:N",
        role: "z^N",
    },
    CatalogEntry {
        pattern: "constant:C",
        role: "constant map C (RE or RE,IM)",
    },
];

fn unknown(name: &str) -> CliError {
    let names: Vec<&str> = ENTRIES.iter().map(|e| e.pattern).collect();
    CliError::Usage(format!("unknown catalog entry `{name}`; available: {}", names.join(", ")))
}

fn number(name: &str, text: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("catalog entry `{name}`: `{text}` is not a number")))
}

fn pair(name: &str, text: &str) -> Result<[f64; 2], CliError> {
    if text.contains(',') {
        let z = parse_complex(text).map_err(|e| CliError::Usage(format!("catalog entry `{name}`: {e}")))?;
        Ok([z.re, z.im])
    } else {
        Ok([number(name, text)?, 0.0])
    }
}

/// Resolves a catalog name such as `kernel:0.9:2` to its descriptor.
pub fn lookup(name: &str) -> Result<Descriptor, CliError> {
    let mut parts = name.split(':');
    let head = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let d = match (head, args.as_slice()) {
        ("eta", []) => FunctionDescriptor::QuadraticExtremal,
        ("identity", []) => FunctionDescriptor::Polynomial {
            coefficients: vec![[0.0, 0.0], [1.0, 0.0]],
        },
        ("half-identity", []) => FunctionDescriptor::ScaledIdentity { c: [0.5, 0.0] },
        ("f-beta", [b]) => FunctionDescriptor::AntiderivativeExtremal { beta: number(name, b)? },
        ("mobius", [a]) => FunctionDescriptor::Mobius { a: pair(name, a)? },
        ("kernel", [b, p]) => FunctionDescriptor::PowerKernel {
            b: pair(name, b)?,
            p: number(name, p)?,
        },
        ("monomial", [n]) => {
            let n: usize = n
                .parse()
                .map_err(|_| CliError::Usage(format!("catalog entry `{name}`: degree must be a non-negative integer")))?;
            let mut coefficients = vec![[0.0, 0.0]; n + 1];
            coefficients[n] = [1.0, 0.0];
            FunctionDescriptor::Polynomial { coefficients }
        }
        ("constant", [c]) => FunctionDescriptor::Polynomial {
            coefficients: vec![pair(name, c)?],
        },
        _ => return Err(unknown(name)),
    };
    let d = Descriptor::Analytic(d);
    d.analytic::<f64>().map_err(CliError::Compute)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_entries() {
        assert_eq!(
            lookup("eta").unwrap(),
            Descriptor::Analytic(FunctionDescriptor::QuadraticExtremal)
        );
        assert_eq!(lookup("identity").unwrap().to_json(), r#"{"kind":"polynomial","coefficients":[[0.0,0.0],[1.0,0.0]]}"#);
        assert_eq!(
            lookup("kernel:0.9:2").unwrap(),
            Descriptor::Analytic(FunctionDescriptor::PowerKernel { b: [0.9, 0.0], p: 2.0 })
        );
        assert_eq!(
            lookup("mobius:0.3,-0.1").unwrap(),
            Descriptor::Analytic(FunctionDescriptor::Mobius { a: [0.3, -0.1] })
        );
    }

    #[test]
    fn unknown_names_list_the_catalog() {
        let e = lookup("sine").unwrap_err().to_string();
        assert!(ENTRIES.iter().all(|x| e.contains(x.pattern)), "{e}");
        assert!(lookup("f-beta").is_err());
        assert!(lookup("f-beta:1.5").is_err());
        assert!(lookup("mobius:1.2").is_err());
    }
}
