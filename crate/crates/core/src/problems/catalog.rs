//! Analytic re-implementations of unconstrained CUTEst problems.
//!
//! Formulas below use 1-based indices as in the published problem definitions; the code
//! is 0-based. Every problem is dimension-parametric, so [`lookup`] accepts any valid `n`;
//! [`catalog`] returns the default desk-scale selection (dimensions taken from the
//! benchmark table, capped at 1000).

use std::sync::Arc;

use super::{Objective, ProblemError, ProblemInstance};

type Builder = fn(usize) -> Result<ProblemInstance, ProblemError>;

struct Entry {
    name: &'static str,
    dims: &'static [usize],
    build: Builder,
}

// Sorted by name.
const ENTRIES: &[Entry] = &[
    Entry {
        name: "ARWHEAD",
        dims: &[100, 500],
        build: arwhead,
    },
    Entry {
        name: "BDQRTIC",
        dims: &[100, 500],
        build: bdqrtic,
    },
    Entry {
        name: "COSINE",
        dims: &[100],
        build: cosine,
    },
    Entry {
        name: "DIXON3DQ",
        dims: &[100],
        build: dixon3dq,
    },
    Entry {
        name: "DQDRTIC",
        dims: &[50, 100],
        build: dqdrtic,
    },
    Entry {
        name: "DQRTIC",
        dims: &[50, 100],
        build: dqrtic,
    },
    // The table lists EDENSCH only at n = 2000; 1000 is the desk-scale stand-in.
    Entry {
        name: "EDENSCH",
        dims: &[1000],
        build: edensch,
    },
    Entry {
        name: "ENGVAL1",
        dims: &[50, 100],
        build: engval1,
    },
    Entry {
        name: "EXTROSNB",
        dims: &[100],
        build: extrosnb,
    },
    Entry {
        name: "FREUROTH",
        dims: &[50, 100],
        build: freuroth,
    },
    Entry {
        name: "LIARWHD",
        dims: &[100, 500],
        build: liarwhd,
    },
    Entry {
        name: "NONDIA",
        dims: &[50, 100],
        build: nondia,
    },
    Entry {
        name: "NONDQUAR",
        dims: &[100],
        build: nondquar,
    },
    Entry {
        name: "PENALTY1",
        dims: &[50, 100],
        build: penalty1,
    },
    Entry {
        name: "POWELLSG",
        dims: &[60, 100],
        build: powellsg,
    },
    Entry {
        name: "POWER",
        dims: &[50, 100],
        build: power,
    },
    Entry {
        name: "QUARTC",
        dims: &[100],
        build: quartc,
    },
    Entry {
        name: "SINQUAD",
        dims: &[50],
        build: sinquad,
    },
    Entry {
        name: "SROSENBR",
        dims: &[50, 100],
        build: srosenbr,
    },
    Entry {
        name: "TOINTGSS",
        dims: &[50, 100],
        build: tointgss,
    },
    Entry {
        name: "TQUARTIC",
        dims: &[50, 100],
        build: tquartic,
    },
    Entry {
        name: "TRIDIA",
        dims: &[50, 100],
        build: tridia,
    },
    Entry {
        name: "VARDIM",
        dims: &[50, 100],
        build: vardim,
    },
    Entry {
        name: "WOODS",
        dims: &[100],
        build: woods,
    },
];

/// The 20-problem desk suite: one instance per core problem family at its smallest
/// catalog dimension.
const DESK: &[(&str, usize)] = &[
    ("ARWHEAD", 100),
    ("BDQRTIC", 100),
    ("COSINE", 100),
    ("DIXON3DQ", 100),
    ("DQDRTIC", 50),
    ("DQRTIC", 50),
    ("EDENSCH", 1000),
    ("ENGVAL1", 50),
    ("EXTROSNB", 100),
    ("FREUROTH", 50),
    ("LIARWHD", 100),
    ("NONDIA", 50),
    ("PENALTY1", 50),
    ("POWELLSG", 60),
    ("POWER", 50),
    ("SROSENBR", 50),
    ("TOINTGSS", 50),
    ("TRIDIA", 50),
    ("VARDIM", 50),
    ("WOODS", 100),
];

/// Default catalog, sorted by name then dimension.
pub fn catalog() -> Vec<ProblemInstance> {
    ENTRIES
        .iter()
        .flat_map(|e| {
            e.dims
                .iter()
                .map(move |&n| (e.build)(n).expect("catalog dimension"))
        })
        .collect()
}

pub fn desk_suite() -> Vec<ProblemInstance> {
    DESK.iter()
        .map(|&(name, n)| lookup(name, n).expect("desk suite entry"))
        .collect()
}

/// All problem names known to [`lookup`].
pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Builds `name` at dimension `n`. Names are matched case-insensitively.
pub fn lookup(name: &str, n: usize) -> Result<ProblemInstance, ProblemError> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| ProblemError::NotInCatalog(name.to_string()))?;
    (entry.build)(n)
}

/// Default catalog dimensions for `name`.
pub fn catalog_dims(name: &str) -> Option<&'static [usize]> {
    ENTRIES
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .map(|e| e.dims)
}

fn require(name: &str, n: usize, ok: bool, reason: &'static str) -> Result<(), ProblemError> {
    if ok {
        Ok(())
    } else {
        Err(ProblemError::InvalidDimension {
            name: name.to_string(),
            dim: n,
            reason,
        })
    }
}

// ARWHEAD: sum_{i<n} (-4 x_i + 3) + (x_i^2 + x_n^2)^2; x0 = 1; x* = (1, ..., 1, 0).
struct Arwhead;

impl Objective for Arwhead {
    fn value(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let xn2 = x[n - 1] * x[n - 1];
        x[..n - 1]
            .iter()
            .map(|xi| {
                let q = xi * xi + xn2;
                -4.0 * xi + 3.0 + q * q
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = x.len();
        let xn = x[n - 1];
        g.fill(0.0);
        for i in 0..n - 1 {
            let q = x[i] * x[i] + xn * xn;
            g[i] += -4.0 + 4.0 * x[i] * q;
            g[n - 1] += 4.0 * xn * q;
        }
    }
}

fn arwhead(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("ARWHEAD", n, n >= 2, "n >= 2")?;
    let mut xstar = vec![1.0; n];
    xstar[n - 1] = 0.0;
    Ok(ProblemInstance::new("ARWHEAD", vec![1.0; n], Arc::new(Arwhead)).with_minimizer(xstar))
}

// BDQRTIC: sum_{i<=n-4} (-4 x_i + 3)^2
//   + (x_i^2 + 2 x_{i+1}^2 + 3 x_{i+2}^2 + 4 x_{i+3}^2 + 5 x_n^2)^2; x0 = 1.
struct Bdqrtic;

impl Objective for Bdqrtic {
    fn value(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let xn2 = x[n - 1] * x[n - 1];
        (0..n - 4)
            .map(|i| {
                let l = -4.0 * x[i] + 3.0;
                let q = x[i] * x[i]
                    + 2.0 * x[i + 1] * x[i + 1]
                    + 3.0 * x[i + 2] * x[i + 2]
                    + 4.0 * x[i + 3] * x[i + 3]
                    + 5.0 * xn2;
                l * l + q * q
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = x.len();
        let xn = x[n - 1];
        g.fill(0.0);
        for i in 0..n - 4 {
            let l = -4.0 * x[i] + 3.0;
            let q = x[i] * x[i]
                + 2.0 * x[i + 1] * x[i + 1]
                + 3.0 * x[i + 2] * x[i + 2]
                + 4.0 * x[i + 3] * x[i + 3]
                + 5.0 * xn * xn;
            g[i] += -8.0 * l + 4.0 * q * x[i];
            g[i + 1] += 8.0 * q * x[i + 1];
            g[i + 2] += 12.0 * q * x[i + 2];
            g[i + 3] += 16.0 * q * x[i + 3];
            g[n - 1] += 20.0 * q * xn;
        }
    }
}

fn bdqrtic(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("BDQRTIC", n, n >= 5, "n >= 5")?;
    Ok(ProblemInstance::new(
        "BDQRTIC",
        vec![1.0; n],
        Arc::new(Bdqrtic),
    ))
}

// COSINE: sum_{i<n} cos(-0.5 x_{i+1} + x_i^2); x0 = 1.
struct Cosine;

impl Objective for Cosine {
    fn value(&self, x: &[f64]) -> f64 {
        x.windows(2)
            .map(|w| (-0.5 * w[1] + w[0] * w[0]).cos())
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        for i in 0..x.len() - 1 {
            let s = (-0.5 * x[i + 1] + x[i] * x[i]).sin();
            g[i] -= 2.0 * x[i] * s;
            g[i + 1] += 0.5 * s;
        }
    }
}

fn cosine(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("COSINE", n, n >= 2, "n >= 2")?;
    Ok(ProblemInstance::new(
        "COSINE",
        vec![1.0; n],
        Arc::new(Cosine),
    ))
}

// DIXON3DQ: (x_1 - 1)^2 + sum_{j=2}^{n-1} (x_j - x_{j+1})^2 + (x_n - 1)^2; x0 = -1; x* = 1.
struct Dixon3dq;

impl Objective for Dixon3dq {
    fn value(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let mut f = (x[0] - 1.0).powi(2) + (x[n - 1] - 1.0).powi(2);
        for j in 1..n - 1 {
            f += (x[j] - x[j + 1]).powi(2);
        }
        f
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = x.len();
        g.fill(0.0);
        g[0] += 2.0 * (x[0] - 1.0);
        g[n - 1] += 2.0 * (x[n - 1] - 1.0);
        for j in 1..n - 1 {
            let t = 2.0 * (x[j] - x[j + 1]);
            g[j] += t;
            g[j + 1] -= t;
        }
    }
}

fn dixon3dq(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("DIXON3DQ", n, n >= 2, "n >= 2")?;
    Ok(
        ProblemInstance::new("DIXON3DQ", vec![-1.0; n], Arc::new(Dixon3dq))
            .with_minimizer(vec![1.0; n]),
    )
}

// DQDRTIC: sum_{i<=n-2} x_i^2 + 100 x_{i+1}^2 + 100 x_{i+2}^2; x0 = 3; x* = 0.
struct Dqdrtic;

impl Objective for Dqdrtic {
    fn value(&self, x: &[f64]) -> f64 {
        x.windows(3)
            .map(|w| w[0] * w[0] + 100.0 * w[1] * w[1] + 100.0 * w[2] * w[2])
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        for i in 0..x.len() - 2 {
            g[i] += 2.0 * x[i];
            g[i + 1] += 200.0 * x[i + 1];
            g[i + 2] += 200.0 * x[i + 2];
        }
    }
}

fn dqdrtic(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("DQDRTIC", n, n >= 3, "n >= 3")?;
    Ok(
        ProblemInstance::new("DQDRTIC", vec![3.0; n], Arc::new(Dqdrtic))
            .with_minimizer(vec![0.0; n]),
    )
}

// DQRTIC / QUARTC: sum_i (x_i - i)^4; x0 = 2; x*_i = i.
struct ShiftedQuartic;

impl Objective for ShiftedQuartic {
    fn value(&self, x: &[f64]) -> f64 {
        x.iter()
            .enumerate()
            .map(|(i, xi)| (xi - (i + 1) as f64).powi(4))
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (i, (gi, xi)) in g.iter_mut().zip(x).enumerate() {
            *gi = 4.0 * (xi - (i + 1) as f64).powi(3);
        }
    }
}

fn shifted_quartic(name: &str, n: usize) -> ProblemInstance {
    let xstar = (1..=n).map(|i| i as f64).collect();
    ProblemInstance::new(name, vec![2.0; n], Arc::new(ShiftedQuartic)).with_minimizer(xstar)
}

fn dqrtic(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("DQRTIC", n, n >= 1, "n >= 1")?;
    Ok(shifted_quartic("DQRTIC", n))
}

fn quartc(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("QUARTC", n, n >= 1, "n >= 1")?;
    Ok(shifted_quartic("QUARTC", n))
}

// EDENSCH: 16 + sum_{i<n} (x_i - 2)^4 + (x_i x_{i+1} - 2 x_{i+1})^2 + (x_{i+1} + 1)^2; x0 = 0.
struct Edensch;

impl Objective for Edensch {
    fn value(&self, x: &[f64]) -> f64 {
        16.0 + x
            .windows(2)
            .map(|w| {
                let r = w[0] * w[1] - 2.0 * w[1];
                (w[0] - 2.0).powi(4) + r * r + (w[1] + 1.0).powi(2)
            })
            .sum::<f64>()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        for i in 0..x.len() - 1 {
            let (a, b) = (x[i], x[i + 1]);
            let r = a * b - 2.0 * b;
            g[i] += 4.0 * (a - 2.0).powi(3) + 2.0 * r * b;
            g[i + 1] += 2.0 * r * (a - 2.0) + 2.0 * (b + 1.0);
        }
    }
}

fn edensch(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("EDENSCH", n, n >= 2, "n >= 2")?;
    Ok(ProblemInstance::new(
        "EDENSCH",
        vec![0.0; n],
        Arc::new(Edensch),
    ))
}

// ENGVAL1: sum_{i<n} (x_i^2 + x_{i+1}^2)^2 - 4 x_i + 3; x0 = 2.
struct Engval1;

impl Objective for Engval1 {
    fn value(&self, x: &[f64]) -> f64 {
        x.windows(2)
            .map(|w| {
                let q = w[0] * w[0] + w[1] * w[1];
                q * q - 4.0 * w[0] + 3.0
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        for i in 0..x.len() - 1 {
            let q = x[i] * x[i] + x[i + 1] * x[i + 1];
            g[i] += 4.0 * x[i] * q - 4.0;
            g[i + 1] += 4.0 * x[i + 1] * q;
        }
    }
}

fn engval1(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("ENGVAL1", n, n >= 2, "n >= 2")?;
    Ok(ProblemInstance::new(
        "ENGVAL1",
        vec![2.0; n],
        Arc::new(Engval1),
    ))
}

// EXTROSNB: x_1^2 + sum_{i>=2} 100 (x_i - x_{i-1}^2)^2; x0 = -1; x* = 0.
struct Extrosnb;

impl Objective for Extrosnb {
    fn value(&self, x: &[f64]) -> f64 {
        x[0] * x[0]
            + x.windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2))
                .sum::<f64>()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        g[0] = 2.0 * x[0];
        for i in 1..x.len() {
            let t = x[i] - x[i - 1] * x[i - 1];
            g[i] += 200.0 * t;
            g[i - 1] -= 400.0 * x[i - 1] * t;
        }
    }
}

fn extrosnb(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("EXTROSNB", n, n >= 2, "n >= 2")?;
    Ok(
        ProblemInstance::new("EXTROSNB", vec![-1.0; n], Arc::new(Extrosnb))
            .with_minimizer(vec![0.0; n]),
    )
}

// FREUROTH: sum_{i<n} r1^2 + r2^2 with
//   r1 = -13 + x_i + ((5 - x_{i+1}) x_{i+1} - 2) x_{i+1},
//   r2 = -29 + x_i + ((1 + x_{i+1}) x_{i+1} - 14) x_{i+1};
// x0 = (0.5, -2, 0, ..., 0).
struct Freuroth;

impl Objective for Freuroth {
    fn value(&self, x: &[f64]) -> f64 {
        x.windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let r1 = -13.0 + a + ((5.0 - b) * b - 2.0) * b;
                let r2 = -29.0 + a + ((1.0 + b) * b - 14.0) * b;
                r1 * r1 + r2 * r2
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        for i in 0..x.len() - 1 {
            let (a, b) = (x[i], x[i + 1]);
            let r1 = -13.0 + a + ((5.0 - b) * b - 2.0) * b;
            let r2 = -29.0 + a + ((1.0 + b) * b - 14.0) * b;
            g[i] += 2.0 * (r1 + r2);
            g[i + 1] += 2.0 * r1 * (10.0 * b - 3.0 * b * b - 2.0)
                + 2.0 * r2 * (3.0 * b * b + 2.0 * b - 14.0);
        }
    }
}

fn freuroth(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("FREUROTH", n, n >= 2, "n >= 2")?;
    let mut x0 = vec![0.0; n];
    x0[0] = 0.5;
    x0[1] = -2.0;
    Ok(ProblemInstance::new("FREUROTH", x0, Arc::new(Freuroth)))
}

// LIARWHD: sum_i 4 (x_i^2 - x_1)^2 + (x_i - 1)^2; x0 = 4; x* = 1.
struct Liarwhd;

impl Objective for Liarwhd {
    fn value(&self, x: &[f64]) -> f64 {
        let x1 = x[0];
        x.iter()
            .map(|xi| 4.0 * (xi * xi - x1).powi(2) + (xi - 1.0).powi(2))
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let x1 = x[0];
        let mut g1 = 0.0;
        for (gi, xi) in g.iter_mut().zip(x) {
            let t = xi * xi - x1;
            *gi = 16.0 * xi * t + 2.0 * (xi - 1.0);
            g1 -= 8.0 * t;
        }
        g[0] += g1;
    }
}

fn liarwhd(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("LIARWHD", n, n >= 1, "n >= 1")?;
    Ok(
        ProblemInstance::new("LIARWHD", vec![4.0; n], Arc::new(Liarwhd))
            .with_minimizer(vec![1.0; n]),
    )
}

// NONDIA: (x_1 - 1)^2 + sum_{i>=2} 100 (x_1 - x_{i-1}^2)^2; x0 = -1; x* = 1.
struct Nondia;

impl Objective for Nondia {
    fn value(&self, x: &[f64]) -> f64 {
        let x1 = x[0];
        (x1 - 1.0).powi(2)
            + x[..x.len() - 1]
                .iter()
                .map(|xi| 100.0 * (x1 - xi * xi).powi(2))
                .sum::<f64>()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = x.len();
        let x1 = x[0];
        g.fill(0.0);
        g[0] = 2.0 * (x1 - 1.0);
        for i in 0..n - 1 {
            let t = x1 - x[i] * x[i];
            g[0] += 200.0 * t;
            g[i] -= 400.0 * x[i] * t;
        }
    }
}

fn nondia(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("NONDIA", n, n >= 2, "n >= 2")?;
    Ok(
        ProblemInstance::new("NONDIA", vec![-1.0; n], Arc::new(Nondia))
            .with_minimizer(vec![1.0; n]),
    )
}

// NONDQUAR: (x_1 - x_2)^2 + sum_{i<=n-2} (x_i + x_{i+1} + x_n)^4 + (x_{n-1} + x_n)^2;
// x0 = (1, -1, 1, -1, ...); x* = 0.
struct Nondquar;

impl Objective for Nondquar {
    fn value(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let xn = x[n - 1];
        (x[0] - x[1]).powi(2)
            + (x[n - 2] + xn).powi(2)
            + x[..n - 1]
                .windows(2)
                .map(|w| (w[0] + w[1] + xn).powi(4))
                .sum::<f64>()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = x.len();
        let xn = x[n - 1];
        g.fill(0.0);
        let a = 2.0 * (x[0] - x[1]);
        g[0] += a;
        g[1] -= a;
        let b = 2.0 * (x[n - 2] + xn);
        g[n - 2] += b;
        g[n - 1] += b;
        for i in 0..n - 2 {
            let t = 4.0 * (x[i] + x[i + 1] + xn).powi(3);
            g[i] += t;
            g[i + 1] += t;
            g[n - 1] += t;
        }
    }
}

fn nondquar(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("NONDQUAR", n, n >= 3, "n >= 3")?;
    let x0 = (0..n)
        .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    Ok(ProblemInstance::new("NONDQUAR", x0, Arc::new(Nondquar)).with_minimizer(vec![0.0; n]))
}

// PENALTY1: a sum_i (x_i - 1)^2 + (sum_i x_i^2 - 1/4)^2, a = 1e-5; x0_i = i.
struct Penalty1;

const PENALTY1_A: f64 = 1e-5;

impl Objective for Penalty1 {
    fn value(&self, x: &[f64]) -> f64 {
        let lin: f64 = x.iter().map(|xi| (xi - 1.0).powi(2)).sum();
        let s: f64 = x.iter().map(|xi| xi * xi).sum::<f64>() - 0.25;
        PENALTY1_A * lin + s * s
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let s: f64 = x.iter().map(|xi| xi * xi).sum::<f64>() - 0.25;
        for (gi, xi) in g.iter_mut().zip(x) {
            *gi = 2.0 * PENALTY1_A * (xi - 1.0) + 4.0 * s * xi;
        }
    }
}

fn penalty1(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("PENALTY1", n, n >= 1, "n >= 1")?;
    let x0 = (1..=n).map(|i| i as f64).collect();
    Ok(ProblemInstance::new("PENALTY1", x0, Arc::new(Penalty1)))
}

// POWELLSG: per block of four,
//   (x1 + 10 x2)^2 + 5 (x3 - x4)^2 + (x2 - 2 x3)^4 + 10 (x1 - x4)^4;
// x0 = (3, -1, 0, 1, ...); x* = 0.
struct Powellsg;

impl Objective for Powellsg {
    fn value(&self, x: &[f64]) -> f64 {
        x.chunks_exact(4)
            .map(|b| {
                (b[0] + 10.0 * b[1]).powi(2)
                    + 5.0 * (b[2] - b[3]).powi(2)
                    + (b[1] - 2.0 * b[2]).powi(4)
                    + 10.0 * (b[0] - b[3]).powi(4)
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (b, gb) in x.chunks_exact(4).zip(g.chunks_exact_mut(4)) {
            let t1 = b[0] + 10.0 * b[1];
            let t2 = b[2] - b[3];
            let t3 = (b[1] - 2.0 * b[2]).powi(3);
            let t4 = (b[0] - b[3]).powi(3);
            gb[0] = 2.0 * t1 + 40.0 * t4;
            gb[1] = 20.0 * t1 + 4.0 * t3;
            gb[2] = 10.0 * t2 - 8.0 * t3;
            gb[3] = -10.0 * t2 - 40.0 * t4;
        }
    }
}

fn powellsg(n: usize) -> Result<ProblemInstance, ProblemError> {
    require(
        "POWELLSG",
        n,
        n >= 4 && n.is_multiple_of(4),
        "n must be a multiple of 4",
    )?;
    let x0 = (0..n).map(|i| [3.0, -1.0, 0.0, 1.0][i % 4]).collect();
    Ok(ProblemInstance::new("POWELLSG", x0, Arc::new(Powellsg)).with_minimizer(vec![0.0; n]))
}

// POWER: (sum_i i x_i^2)^2; x0 = 1; x* = 0.
struct Power;

impl Objective for Power {
    fn value(&self, x: &[f64]) -> f64 {
        let s: f64 = x
            .iter()
            .enumerate()
            .map(|(i, xi)| (i + 1) as f64 * xi * xi)
            .sum();
        s * s
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let s: f64 = x
            .iter()
            .enumerate()
            .map(|(i, xi)| (i + 1) as f64 * xi * xi)
            .sum();
        for (i, (gi, xi)) in g.iter_mut().zip(x).enumerate() {
            *gi = 4.0 * s * (i + 1) as f64 * xi;
        }
    }
}

fn power(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("POWER", n, n >= 1, "n >= 1")?;
    Ok(ProblemInstance::new("POWER", vec![1.0; n], Arc::new(Power)).with_minimizer(vec![0.0; n]))
}

// SINQUAD: (x_1 - 1)^4 + sum_{i=2}^{n-1} (sin(x_i - x_n) - x_1^2 + x_i^2)^2 + (x_n^2 - x_1^2)^2;
// x0 = 0.1.
struct Sinquad;

impl Objective for Sinquad {
    fn value(&self, x: &[f64]) -> f64 {
        let n = x.len();
        let (x1, xn) = (x[0], x[n - 1]);
        let mut f = (x1 - 1.0).powi(4) + (xn * xn - x1 * x1).powi(2);
        for xi in &x[1..n - 1] {
            f += ((xi - xn).sin() - x1 * x1 + xi * xi).powi(2);
        }
        f
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let n = x.len();
        let (x1, xn) = (x[0], x[n - 1]);
        g.fill(0.0);
        g[0] += 4.0 * (x1 - 1.0).powi(3);
        let q = xn * xn - x1 * x1;
        g[0] -= 4.0 * q * x1;
        g[n - 1] += 4.0 * q * xn;
        for i in 1..n - 1 {
            let u = x[i] - xn;
            let r = 2.0 * (u.sin() - x1 * x1 + x[i] * x[i]);
            g[i] += r * (u.cos() + 2.0 * x[i]);
            g[n - 1] -= r * u.cos();
            g[0] -= r * 2.0 * x1;
        }
    }
}

fn sinquad(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("SINQUAD", n, n >= 3, "n >= 3")?;
    Ok(ProblemInstance::new(
        "SINQUAD",
        vec![0.1; n],
        Arc::new(Sinquad),
    ))
}

// SROSENBR: sum_{i<=n/2} 100 (x_{2i} - x_{2i-1}^2)^2 + (x_{2i-1} - 1)^2;
// x0 = (-1.2, 1, -1.2, 1, ...); x* = 1.
struct Srosenbr;

impl Objective for Srosenbr {
    fn value(&self, x: &[f64]) -> f64 {
        x.chunks_exact(2)
            .map(|p| 100.0 * (p[1] - p[0] * p[0]).powi(2) + (p[0] - 1.0).powi(2))
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (p, gp) in x.chunks_exact(2).zip(g.chunks_exact_mut(2)) {
            let t = p[1] - p[0] * p[0];
            gp[0] = -400.0 * p[0] * t + 2.0 * (p[0] - 1.0);
            gp[1] = 200.0 * t;
        }
    }
}

fn srosenbr(n: usize) -> Result<ProblemInstance, ProblemError> {
    require(
        "SROSENBR",
        n,
        n >= 2 && n.is_multiple_of(2),
        "n must be even",
    )?;
    let x0 = (0..n)
        .map(|i| if i % 2 == 0 { -1.2 } else { 1.0 })
        .collect();
    Ok(ProblemInstance::new("SROSENBR", x0, Arc::new(Srosenbr)).with_minimizer(vec![1.0; n]))
}

// TOINTGSS: sum_{i<=n-2} (c + x_{i+2}^2) (2 - exp(-(x_i - x_{i+1})^2 / (0.1 + x_{i+2}^2))),
// c = 10 / (n + 2); x0 = 3.
struct Tointgss {
    c: f64,
}

impl Objective for Tointgss {
    fn value(&self, x: &[f64]) -> f64 {
        x.windows(3)
            .map(|w| {
                let z2 = w[2] * w[2];
                let u = w[0] - w[1];
                (self.c + z2) * (2.0 - (-u * u / (0.1 + z2)).exp())
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        for i in 0..x.len() - 2 {
            let z = x[i + 2];
            let w = 0.1 + z * z;
            let u = x[i] - x[i + 1];
            let e = (-u * u / w).exp();
            let a = self.c + z * z;
            let du = a * e * 2.0 * u / w;
            g[i] += du;
            g[i + 1] -= du;
            g[i + 2] += 2.0 * z * (2.0 - e) - a * e * u * u * 2.0 * z / (w * w);
        }
    }
}

fn tointgss(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("TOINTGSS", n, n >= 3, "n >= 3")?;
    let c = 10.0 / (n as f64 + 2.0);
    Ok(ProblemInstance::new(
        "TOINTGSS",
        vec![3.0; n],
        Arc::new(Tointgss { c }),
    ))
}

// TQUARTIC: (x_1 - 1)^2 + sum_{i<n} (x_1^2 - x_{i+1}^2)^2; x0 = 0.1; x* = 1.
struct Tquartic;

impl Objective for Tquartic {
    fn value(&self, x: &[f64]) -> f64 {
        let x1sq = x[0] * x[0];
        (x[0] - 1.0).powi(2)
            + x[1..]
                .iter()
                .map(|xi| (x1sq - xi * xi).powi(2))
                .sum::<f64>()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let x1 = x[0];
        let x1sq = x1 * x1;
        g[0] = 2.0 * (x1 - 1.0);
        for i in 1..x.len() {
            let t = x1sq - x[i] * x[i];
            g[0] += 4.0 * x1 * t;
            g[i] = -4.0 * x[i] * t;
        }
    }
}

fn tquartic(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("TQUARTIC", n, n >= 2, "n >= 2")?;
    Ok(
        ProblemInstance::new("TQUARTIC", vec![0.1; n], Arc::new(Tquartic))
            .with_minimizer(vec![1.0; n]),
    )
}

// TRIDIA: (x_1 - 1)^2 + sum_{i>=2} i (2 x_i - x_{i-1})^2; x0 = 1; x*_i = 2^{1-i}.
struct Tridia;

impl Objective for Tridia {
    fn value(&self, x: &[f64]) -> f64 {
        let mut f = (x[0] - 1.0).powi(2);
        for i in 1..x.len() {
            f += (i + 1) as f64 * (2.0 * x[i] - x[i - 1]).powi(2);
        }
        f
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        g.fill(0.0);
        g[0] = 2.0 * (x[0] - 1.0);
        for i in 1..x.len() {
            let t = 2.0 * (i + 1) as f64 * (2.0 * x[i] - x[i - 1]);
            g[i] += 2.0 * t;
            g[i - 1] -= t;
        }
    }
}

fn tridia(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("TRIDIA", n, n >= 1, "n >= 1")?;
    let xstar = (0..n).map(|i| 0.5f64.powi(i as i32)).collect();
    Ok(ProblemInstance::new("TRIDIA", vec![1.0; n], Arc::new(Tridia)).with_minimizer(xstar))
}

// VARDIM: sum_i (x_i - 1)^2 + s^2 + s^4 with s = sum_i i (x_i - 1); x0_i = 1 - i/n; x* = 1.
struct Vardim;

impl Objective for Vardim {
    fn value(&self, x: &[f64]) -> f64 {
        let mut sq = 0.0;
        let mut s = 0.0;
        for (i, xi) in x.iter().enumerate() {
            sq += (xi - 1.0).powi(2);
            s += (i + 1) as f64 * (xi - 1.0);
        }
        sq + s * s + s.powi(4)
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        let s: f64 = x
            .iter()
            .enumerate()
            .map(|(i, xi)| (i + 1) as f64 * (xi - 1.0))
            .sum();
        let ds = 2.0 * s + 4.0 * s.powi(3);
        for (i, (gi, xi)) in g.iter_mut().zip(x).enumerate() {
            *gi = 2.0 * (xi - 1.0) + ds * (i + 1) as f64;
        }
    }
}

fn vardim(n: usize) -> Result<ProblemInstance, ProblemError> {
    require("VARDIM", n, n >= 1, "n >= 1")?;
    let x0 = (1..=n).map(|i| 1.0 - i as f64 / n as f64).collect();
    Ok(ProblemInstance::new("VARDIM", x0, Arc::new(Vardim)).with_minimizer(vec![1.0; n]))
}

// WOODS: per block of four,
//   100 (x2 - x1^2)^2 + (1 - x1)^2 + 90 (x4 - x3^2)^2 + (1 - x3)^2
//   + 10 (x2 + x4 - 2)^2 + 0.1 (x2 - x4)^2;
// x0 = (-3, -1, -3, -1, ...); x* = 1.
struct Woods;

impl Objective for Woods {
    fn value(&self, x: &[f64]) -> f64 {
        x.chunks_exact(4)
            .map(|b| {
                100.0 * (b[1] - b[0] * b[0]).powi(2)
                    + (1.0 - b[0]).powi(2)
                    + 90.0 * (b[3] - b[2] * b[2]).powi(2)
                    + (1.0 - b[2]).powi(2)
                    + 10.0 * (b[1] + b[3] - 2.0).powi(2)
                    + 0.1 * (b[1] - b[3]).powi(2)
            })
            .sum()
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (b, gb) in x.chunks_exact(4).zip(g.chunks_exact_mut(4)) {
            let t1 = b[1] - b[0] * b[0];
            let t3 = b[3] - b[2] * b[2];
            let s = 20.0 * (b[1] + b[3] - 2.0);
            let d = 0.2 * (b[1] - b[3]);
            gb[0] = -400.0 * b[0] * t1 - 2.0 * (1.0 - b[0]);
            gb[1] = 200.0 * t1 + s + d;
            gb[2] = -360.0 * b[2] * t3 - 2.0 * (1.0 - b[2]);
            gb[3] = 180.0 * t3 + s - d;
        }
    }
}

fn woods(n: usize) -> Result<ProblemInstance, ProblemError> {
    require(
        "WOODS",
        n,
        n >= 4 && n.is_multiple_of(4),
        "n must be a multiple of 4",
    )?;
    let x0 = (0..n)
        .map(|i| if i % 2 == 0 { -3.0 } else { -1.0 })
        .collect();
    Ok(ProblemInstance::new("WOODS", x0, Arc::new(Woods)).with_minimizer(vec![1.0; n]))
}
