//! Shared helpers for the integration tests: a dense reference implementation
//! written without the library's polynomial code, and the CLI golden cases.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qmul::Poly;

/// Dense polynomial, index = exponent, no trailing zeros.
pub type Dense = Vec<BigInt>;

pub fn trim(mut d: Dense) -> Dense {
    while d.last().is_some_and(|c| c.is_zero()) {
        d.pop();
    }
    d
}

pub fn dense(coeffs: &[i64]) -> Dense {
    trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn to_dense(p: &Poly) -> Dense {
    let mut d = vec![BigInt::zero(); p.degree().map_or(0, |e| e as usize + 1)];
    for (e, c) in p.terms() {
        d[e as usize] = c.clone();
    }
    d
}

pub fn to_poly(d: &Dense) -> Poly {
    Poly::from_terms(d.iter().enumerate().map(|(e, c)| (e as u64, c.clone())))
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &Dense, k: u64) -> Dense {
    let mut out = vec![BigInt::one()];
    for _ in 0..k {
        out = mul(&out, a);
    }
    out
}

/// `f(q^k)`
pub fn subst(a: &Dense, k: u64) -> Dense {
    if a.is_empty() {
        return Vec::new();
    }
    let k = k as usize;
    let mut out = vec![BigInt::zero(); (a.len() - 1) * k + 1];
    for (i, c) in a.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

pub fn quantum(n: u64) -> Dense {
    vec![BigInt::one(); n as usize]
}

/// `q^d - 1`
fn q_d_minus_one(d: u64) -> Dense {
    let mut out = vec![BigInt::zero(); d as usize + 1];
    out[0] = BigInt::from(-1);
    out[d as usize] = BigInt::one();
    out
}

/// Divide by `q^d - 1`, which must divide exactly.
fn div_q_d_minus_one(a: &Dense, d: u64) -> Dense {
    let d = d as usize;
    let mut rem = a.clone();
    let mut quo = vec![BigInt::zero(); rem.len().saturating_sub(d)];
    for i in (d..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quo[i - d] = c.clone();
        rem[i] -= &c;
        rem[i - d] += &c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division by q^{d} - 1");
    trim(quo)
}

pub fn naive_factor(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    out
}

pub fn mobius(n: u64) -> i32 {
    let f = naive_factor(n);
    if f.windows(2).any(|w| w[0] == w[1]) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Phi_n = prod_{d | n} (q^d - 1)^mu(n/d)`
pub fn cyclotomic(n: u64) -> Dense {
    let divs: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut acc = vec![BigInt::one()];
    for &d in &divs {
        if mobius(n / d) == 1 {
            acc = mul(&acc, &q_d_minus_one(d));
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            acc = div_q_d_minus_one(&acc, d);
        }
    }
    acc
}

/// A completely multiplicative function given by its values on primes.
pub fn mult_eval(on_prime: impl Fn(u64) -> u64, n: u64) -> u64 {
    naive_factor(n).into_iter().map(on_prime).product()
}

/// `alpha_n(f) = f(q^{u(n)})^{v(n)}`
pub fn alpha(u_n: u64, v_n: u64, f: &Dense) -> Dense {
    pow(&subst(f, u_n), v_n)
}

/// Seeded solution evaluated right-associated with the smallest prime first:
/// `f_n = h_p * alpha_{u(p)}(f_{n/p})`.
pub fn seeded(
    seeds: &dyn Fn(u64) -> Option<Dense>,
    u: &dyn Fn(u64) -> u64,
    au: &dyn Fn(u64) -> u64,
    av: &dyn Fn(u64) -> u64,
    n: u64,
) -> Dense {
    let ps = naive_factor(n);
    let Some(&p) = ps.first() else {
        return vec![BigInt::one()];
    };
    let Some(h) = seeds(p) else {
        return Vec::new();
    };
    let rest = seeded(seeds, u, au, av, n / p);
    let up = mult_eval(u, p);
    mul(&h, &alpha(mult_eval(au, up), mult_eval(av, up), &rest))
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

pub const GOLDEN: &[GoldenCase] = &[
    GoldenCase { name: "qi_6", args: &["qi", "6"], code: 0 },
    GoldenCase { name: "qi_4_json", args: &["--json", "qi", "4"], code: 0 },
    GoldenCase { name: "qi_zero", args: &["qi", "0"], code: 1 },
    GoldenCase {
        name: "build_quantum",
        args: &["build", "tests/fixtures/quantum23.json", "--precompute", "6"],
        code: 0,
    },
    GoldenCase {
        name: "build_incompatible",
        args: &["build", "tests/fixtures/incompatible.json"],
        code: 2,
    },
    GoldenCase {
        name: "verify_quantum",
        args: &["verify", "tests/fixtures/quantum23.json", "--M", "8", "--N", "8"],
        code: 0,
    },
    GoldenCase {
        name: "verify_quantum_json",
        args: &["--json", "verify", "tests/fixtures/quantum23.json", "--M", "5", "--N", "5"],
        code: 0,
    },
    GoldenCase {
        name: "verify_builtin_power_square",
        args: &["verify", "--builtin", "power", "--u", "power:2", "--M", "6", "--N", "6"],
        code: 0,
    },
    GoldenCase {
        name: "verify_incompatible_json",
        args: &["--json", "verify", "tests/fixtures/incompatible.json"],
        code: 2,
    },
    GoldenCase {
        name: "verify_corrupted",
        args: &["verify", "tests/fixtures/corrupted.json", "--M", "4", "--N", "4"],
        code: 3,
    },
    GoldenCase {
        name: "verify_corrupted_json",
        args: &["--json", "verify", "tests/fixtures/corrupted.json", "--M", "3", "--N", "3"],
        code: 3,
    },
    GoldenCase {
        name: "verify_malformed",
        args: &["verify", "tests/fixtures/malformed.json"],
        code: 1,
    },
    GoldenCase {
        name: "table_quantum",
        args: &["table", "tests/fixtures/quantum23.json", "--max", "8"],
        code: 0,
    },
    GoldenCase {
        name: "table_quantum_json",
        args: &["--json", "table", "tests/fixtures/quantum23.json", "--max", "4"],
        code: 0,
    },
    GoldenCase {
        name: "table_empty",
        args: &["table", "tests/fixtures/empty.json", "--max", "4"],
        code: 0,
    },
    GoldenCase {
        name: "table_builtin_quantum_square",
        args: &["table", "--builtin", "quantum", "--u", "power:2", "--max", "5"],
        code: 0,
    },
    GoldenCase {
        name: "analyze_quantum",
        args: &["analyze", "tests/fixtures/quantum23.json", "--up-to", "12"],
        code: 0,
    },
    GoldenCase {
        name: "analyze_quantum_json",
        args: &["--json", "analyze", "tests/fixtures/quantum23.json", "--up-to", "4"],
        code: 0,
    },
    GoldenCase {
        name: "analyze_monomial",
        args: &["analyze", "tests/fixtures/monomial2.json", "--up-to", "8"],
        code: 0,
    },
    GoldenCase {
        name: "analyze_noncyclotomic",
        args: &["analyze", "tests/fixtures/noncyclotomic.json", "--up-to", "4"],
        code: 4,
    },
    GoldenCase {
        name: "analyze_noncyclotomic_json",
        args: &["--json", "analyze", "tests/fixtures/noncyclotomic.json", "--up-to", "2"],
        code: 4,
    },
    GoldenCase { name: "unknown_command", args: &["bogus"], code: 1 },
];

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Run one case against the built binary. Returns a description of the first
/// mismatch, if any. With `QMUL_BLESS` set the golden file is rewritten.
pub fn run_golden(case: &GoldenCase) -> Result<(), String> {
    let output = Command::new(env!("CARGO_BIN_EXE_qmul"))
        .args(case.args)
        .current_dir(manifest_dir())
        .output()
        .map_err(|e| format!("{}: spawn failed: {e}", case.name))?;
    let code = output.status.code().unwrap_or(-1);
    // Usage errors go to stderr; everything else is on stdout.
    let mut text = output.stdout.clone();
    if case.code == 1 {
        text.extend_from_slice(&output.stderr);
    }
    let path = golden_path(case.name);
    if std::env::var_os("QMUL_BLESS").is_some() {
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
    }
    if code != case.code {
        return Err(format!("{}: exit code {code}, expected {}", case.name, case.code));
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != text {
        return Err(format!(
            "{}: output differs from {}\n--- got ---\n{}",
            case.name,
            path.display(),
            String::from_utf8_lossy(&text)
        ));
    }
    Ok(())
}
