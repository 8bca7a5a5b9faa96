//! Replay of every machine-checkable identity behind the counterexample.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificates::Certificate;
use crate::counterexample::{evans_side, trivial_side, CERT_ENE};
use crate::foxcalc::boundary_d2;
use crate::laurent::{parse_laurent, LaurentPoly};
use crate::matrices::{evans_matrix, outer_product, reduce_e1_fixed, LaurentMatrix};
use crate::presentations::Presentation;
use crate::sampling;
use crate::winding::{lambda_vector, winding_grid_oracle, winding_invariant};
use crate::words::{parse_word, Word};

/// Seed for the random elements fed to the reduction check.
pub const REDUCTION_SEED: u64 = 0x005e_ede1;
pub const REDUCTION_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One `CHECK <name> PASS|FAIL` line per check.
    pub fn machine_format(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("CHECK {} {}\n", c.name, if c.passed { "PASS" } else { "FAIL" }))
            .collect()
    }

    fn push(&mut self, name: &str, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{:<width$}  {status}  {}", c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}

/// Data the replay reads instead of the built-in values.
#[derive(Debug, Clone)]
pub struct PaperInputs {
    pub cert_text: String,
    pub evans: LaurentMatrix,
}

impl Default for PaperInputs {
    fn default() -> Self {
        PaperInputs {
            cert_text: CERT_ENE.to_string(),
            evans: evans_matrix(),
        }
    }
}

fn poly(s: &str) -> LaurentPoly {
    parse_laurent(s).expect("literal polynomial")
}

fn word(s: &str) -> Word {
    parse_word(s).expect("literal word")
}

fn expect_eq<T: PartialEq + fmt::Display>(what: &str, got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(format!("{what} = {got}"))
    } else {
        Err(format!("{what} = {got}, expected {want}"))
    }
}

fn show_vec(v: &[LaurentPoly]) -> String {
    let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn check_winding(name: &str, w: &str, want: &str) -> Result<String, String> {
    let got = winding_invariant(&word(w)).map_err(|e| e.to_string())?;
    expect_eq(&format!("P_{name}"), got, poly(want))
}

fn check_lambda(p: &Presentation, want: &[LaurentPoly]) -> Result<String, String> {
    let got = lambda_vector(p).map_err(|e| e.to_string())?;
    if got == want {
        Ok(format!("Λ = {}", show_vec(&got)))
    } else {
        Err(format!("Λ = {}, expected {}", show_vec(&got), show_vec(want)))
    }
}

fn check_fox(p: &Presentation, displayed: &str) -> Result<String, String> {
    let d = boundary_d2(p).map_err(|e| e.to_string())?;
    let want: LaurentMatrix = displayed.parse().map_err(|e: crate::matrices::MatrixError| e.to_string())?;
    expect_eq("d2", d, want)
}

fn check_outer(p: &Presentation) -> Result<String, String> {
    let d = boundary_d2(p).map_err(|e| e.to_string())?;
    let lambda = lambda_vector(p).map_err(|e| e.to_string())?;
    let outer = outer_product(&[poly("1 - Y"), poly("X - 1")], &lambda).map_err(|e| e.to_string())?;
    expect_eq("d2", d, outer)
}

const P_BOUNDARY: &str = "1 - Y, 0; X - 1, 0";
const Q_BOUNDARY: &str = "(1-Y)*(1-2*(X-1)*Y^-1), (X-1)^2*(1-Y^-1); \
                          (X-1)*(1-2*(X-1)*Y^-1), -(X-1)^3*Y^-1";

/// Runs the winding, Λ, Evans, Fox, certificate and reduction checks.
pub fn run_verify_paper(inputs: &PaperInputs) -> VerificationReport {
    let mut r = VerificationReport::default();
    let p = trivial_side();
    let q = evans_side();
    let m = &inputs.evans;

    r.push("winding-commutator", check_winding("[x,y]", "[x,y]", "1"));
    r.push("winding-inverse-commutator", check_winding("[y^-1,x]", "[y^-1,x]", "Y^-1"));

    r.push("lambda-p", check_lambda(&p, &[poly("1"), poly("0")]));
    r.push(
        "lambda-q",
        check_lambda(&q, &[poly("1 - 2*(X-1)*Y^-1"), poly("-(X-1)^2*Y^-1")]),
    );
    r.push(
        "lambda-q-evans-column",
        (|| {
            let lambda = lambda_vector(&q).map_err(|e| e.to_string())?;
            if m.rows() != 2 || m.cols() != 2 {
                return Err(format!("Evans matrix is {}x{}", m.rows(), m.cols()));
            }
            let column = m.column(0);
            if lambda == column {
                Ok("Λ(Q) is the first column of M".into())
            } else {
                Err(format!("Λ(Q) = {}, first column {}", show_vec(&lambda), show_vec(&column)))
            }
        })(),
    );
    r.push(
        "winding-grid-r1",
        (|| {
            let grid = winding_grid_oracle(&q.relators()[0]).map_err(|e| e.to_string())?;
            let cells: Vec<_> = grid.cells.iter().map(|(&k, &v)| (k, v)).collect();
            let want = vec![((0, -1), 2), ((0, 0), 1), ((1, -1), -2)];
            if cells == want {
                Ok(format!("cells {cells:?}"))
            } else {
                Err(format!("cells {cells:?}, expected {want:?}"))
            }
        })(),
    );

    r.push(
        "evans-determinant",
        m.det().map_err(|e| e.to_string()).and_then(|d| expect_eq("det M", d, LaurentPoly::one())),
    );
    r.push(
        "evans-inverse",
        (|| {
            let inv = m.adjugate_inverse_2x2().map_err(|e| e.to_string())?;
            let prod = m.mul(&inv).map_err(|e| e.to_string())?;
            if prod.is_identity() {
                Ok(format!("M^-1 = {inv}"))
            } else {
                Err(format!("M M^-1 = {prod}"))
            }
        })(),
    );

    r.push("fox-p", check_fox(&p, P_BOUNDARY));
    r.push("fox-q", check_fox(&q, Q_BOUNDARY));
    r.push("fox-outer-p", check_outer(&p));
    r.push("fox-outer-q", check_outer(&q));
    r.push(
        "fox-chain-map",
        (|| {
            let dp = boundary_d2(&p).map_err(|e| e.to_string())?;
            let dq = boundary_d2(&q).map_err(|e| e.to_string())?;
            let lhs = dp.mul(&m.transpose()).map_err(|e| e.to_string())?;
            expect_eq("d2(P) M^t", lhs, dq)
        })(),
    );

    let cert: Result<Certificate, String> = inputs.cert_text.parse().map_err(|e: crate::certificates::CertificateError| e.to_string());
    let target = word("[x,y]");
    r.push(
        "certificate-verify",
        cert.clone().and_then(|c| match c.expand(&q) {
            Ok(w) if w == target => Ok(format!("{} steps expand to [x,y]", c.len())),
            Ok(w) => Err(format!("expands to {w}")),
            Err(e) => Err(e.to_string()),
        }),
    );
    r.push(
        "certificate-lambda",
        cert.and_then(|c| match c.lambda_consistency(&q, &target) {
            Ok(true) => Ok("Σ ±Λ_i = P_[x,y]".into()),
            Ok(false) => Err("winding sums disagree".into()),
            Err(e) => Err(e.to_string()),
        }),
    );

    r.push("reduction-e1", check_reduction());
    r
}

fn check_reduction() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(REDUCTION_SEED);
    for _ in 0..REDUCTION_SAMPLES {
        let a = sampling::laurent(&mut rng, 6, 3, 9);
        let n = LaurentMatrix::from_rows(vec![vec![LaurentPoly::one(), a.clone()], vec![LaurentPoly::zero(), LaurentPoly::one()]])
            .map_err(|e| e.to_string())?;
        let f = reduce_e1_fixed(&n).map_err(|e| e.to_string())?;
        let prod = f.realize(2).and_then(|e| e.mul(&n)).map_err(|e| e.to_string())?;
        if !prod.is_identity() {
            return Err(format!("A = {a}: E N = {prod}"));
        }
    }
    Ok(format!("{REDUCTION_SAMPLES} random A"))
}
