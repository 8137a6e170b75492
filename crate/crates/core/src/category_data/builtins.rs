//! Hard-coded skeletal data for the standard small examples.
//!
//! All tables are in the unitary gauge with every F-symbol that has a unit leg
//! equal to 1. The coherence validator is the oracle for these numbers.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::{BraidedData, CategorySpec, FusionRing, RibbonStructure, C64};
use crate::error::{MtcError, Result};

/// Canonical instances used by `mtc list` and the full sweeps.
pub fn builtin_catalog() -> Vec<&'static str> {
    vec![
        "trivial",
        "semion",
        "fibonacci",
        "ising",
        "z_3(1)",
        "z_4(1)",
        "rep_z2_symmetric",
    ]
}

pub fn builtin_names() -> String {
    "trivial, semion, fibonacci, ising, z_n(k) (e.g. z_3(1)), rep_z2_symmetric".to_string()
}

pub fn builtin_category(name: &str) -> Result<CategorySpec> {
    match name {
        "trivial" => Ok(trivial()),
        "semion" => Ok(semion()),
        "fibonacci" | "fib" => Ok(fibonacci()),
        "ising" => Ok(ising()),
        "rep_z2_symmetric" => Ok(rep_z2_symmetric()),
        other => match parse_zn(other) {
            Some((n, k)) => Ok(z_n(n, k)),
            None => Err(MtcError::UnknownBuiltin {
                name: name.to_string(),
                available: builtin_names(),
            }),
        },
    }
}

/// Accepts `z_n(k)`, `z_n` (k = 1) and `zn_k`.
fn parse_zn(s: &str) -> Option<(usize, i64)> {
    let rest = s.strip_prefix("z_").or_else(|| s.strip_prefix('z'))?;
    let (n, k) = if let Some(open) = rest.find('(') {
        let k = rest[open + 1..].strip_suffix(')')?;
        (&rest[..open], k)
    } else if let Some((n, k)) = rest.split_once('_') {
        (n, k)
    } else {
        (rest, "1")
    };
    let n: usize = n.parse().ok()?;
    let k: i64 = k.parse().ok()?;
    (1..=64).contains(&n).then_some((n, k))
}

fn cis(angle: f64) -> C64 {
    C64::from_polar(1.0, angle)
}

/// Assembles a multiplicity-free spec from closures over labels.
struct Builder {
    rank: usize,
    n: Vec<u32>,
}

impl Builder {
    fn new(rank: usize, fuse: impl Fn(usize, usize, usize) -> bool) -> Self {
        let mut n = vec![0u32; rank * rank * rank];
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    n[(a * rank + b) * rank + c] = u32::from(fuse(a, b, c));
                }
            }
        }
        Self { rank, n }
    }

    fn has(&self, a: usize, b: usize, c: usize) -> bool {
        self.n[(a * self.rank + b) * self.rank + c] > 0
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        self,
        name: &str,
        labels: &[&str],
        dual: Vec<usize>,
        dims: Vec<f64>,
        twists: Vec<C64>,
        f: impl Fn(usize, usize, usize, usize, usize, usize) -> f64,
        r: impl Fn(usize, usize, usize) -> C64,
    ) -> CategorySpec {
        let rank = self.rank;
        let mut fmap = BTreeMap::new();
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    for d in 0..rank {
                        for e in 0..rank {
                            if !(self.has(a, b, e) && self.has(e, c, d)) {
                                continue;
                            }
                            for g in 0..rank {
                                if !(self.has(b, c, g) && self.has(a, g, d)) {
                                    continue;
                                }
                                let v = f(a, b, c, d, e, g);
                                if v != 0.0 {
                                    fmap.insert([a, b, c, d, e, 0, 0, g, 0, 0], C64::new(v, 0.0));
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut rmap = BTreeMap::new();
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    if self.has(a, b, c) {
                        rmap.insert([a, b, c, 0, 0], r(a, b, c));
                    }
                }
            }
        }
        CategorySpec::new(
            name,
            labels.iter().map(|s| s.to_string()).collect(),
            FusionRing::new(rank, self.n, dual),
            RibbonStructure { dims, twists },
            BraidedData { f: fmap, r: rmap },
        )
    }
}

pub fn trivial() -> CategorySpec {
    Builder::new(1, |_, _, _| true).finish(
        "trivial",
        &["id"],
        vec![0],
        vec![1.0],
        vec![C64::new(1.0, 0.0)],
        |_, _, _, _, _, _| 1.0,
        |_, _, _| C64::new(1.0, 0.0),
    )
}

pub fn semion() -> CategorySpec {
    Builder::new(2, |a, b, c| (a + b) % 2 == c).finish(
        "semion",
        &["id", "s"],
        vec![0, 1],
        vec![1.0, 1.0],
        vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)],
        |a, b, c, _, _, _| if a == 1 && b == 1 && c == 1 { -1.0 } else { 1.0 },
        |a, b, _| if a == 1 && b == 1 { C64::new(0.0, 1.0) } else { C64::new(1.0, 0.0) },
    )
}

pub fn fibonacci() -> CategorySpec {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    Builder::new(2, |a, b, c| match (a, b) {
        (0, x) | (x, 0) => x == c,
        _ => true,
    })
    .finish(
        "fibonacci",
        &["id", "τ"],
        vec![0, 1],
        vec![1.0, phi],
        vec![C64::new(1.0, 0.0), cis(4.0 * PI / 5.0)],
        move |a, b, c, d, e, g| {
            if a == 1 && b == 1 && c == 1 && d == 1 {
                match (e, g) {
                    (0, 0) => 1.0 / phi,
                    (1, 1) => -1.0 / phi,
                    _ => 1.0 / phi.sqrt(),
                }
            } else {
                1.0
            }
        },
        |a, b, c| match (a, b, c) {
            (1, 1, 0) => cis(-4.0 * PI / 5.0),
            (1, 1, 1) => cis(3.0 * PI / 5.0),
            _ => C64::new(1.0, 0.0),
        },
    )
}

pub fn ising() -> CategorySpec {
    // labels: 0 = id, 1 = σ, 2 = ψ
    let fuse = |a: usize, b: usize, c: usize| match (a, b) {
        (0, x) | (x, 0) => x == c,
        (1, 1) => c == 0 || c == 2,
        (1, 2) | (2, 1) => c == 1,
        (2, 2) => c == 0,
        _ => false,
    };
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Builder::new(3, fuse).finish(
        "ising",
        &["id", "σ", "ψ"],
        vec![0, 1, 2],
        vec![1.0, 2f64.sqrt(), 1.0],
        vec![C64::new(1.0, 0.0), cis(PI / 8.0), C64::new(-1.0, 0.0)],
        move |a, b, c, d, e, g| match (a, b, c, d) {
            (1, 1, 1, 1) => {
                if e == 2 && g == 2 {
                    -s
                } else {
                    s
                }
            }
            (1, 2, 1, 2) | (2, 1, 2, 1) => -1.0,
            _ => 1.0,
        },
        |a, b, c| match (a, b, c) {
            (1, 1, 0) => cis(-PI / 8.0),
            (1, 1, 2) => cis(3.0 * PI / 8.0),
            (1, 2, 1) | (2, 1, 1) => C64::new(0.0, -1.0),
            (2, 2, 0) => C64::new(-1.0, 0.0),
            _ => C64::new(1.0, 0.0),
        },
    )
}

/// Cyclic group Z_n with trivial associator, bilinear braiding
/// `exp(2πi k ab / n)` and twists `exp(2πi k a² / n)`. Modular iff gcd(2k, n) = 1.
pub fn z_n(n: usize, k: i64) -> CategorySpec {
    let labels: Vec<String> = (0..n).map(|a| a.to_string()).collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let nn = n as f64;
    let kk = k as f64;
    Builder::new(n, move |a, b, c| (a + b) % n == c).finish(
        &format!("z_{n}({k})"),
        &label_refs,
        (0..n).map(|a| (n - a) % n).collect(),
        vec![1.0; n],
        (0..n)
            .map(|a| cis(2.0 * PI * kk * ((a * a) % n) as f64 / nn))
            .collect(),
        |_, _, _, _, _, _| 1.0,
        move |a, b, _| cis(2.0 * PI * kk * ((a * b) % n) as f64 / nn),
    )
}

/// Representations of Z_2 with the symmetric (trivial) braiding: premodular,
/// never modular.
pub fn rep_z2_symmetric() -> CategorySpec {
    Builder::new(2, |a, b, c| (a + b) % 2 == c).finish(
        "rep_z2_symmetric",
        &["id", "g"],
        vec![0, 1],
        vec![1.0, 1.0],
        vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
        |_, _, _, _, _, _| 1.0,
        |_, _, _| C64::new(1.0, 0.0),
    )
}
