//! Named verification batteries, as run by `strictchain verify`.

use std::fmt;
use std::str::FromStr;

use crate::chains::{transition_matrix_with, verify_function_operators, verify_spectrum, verify_transition_matrix};
use crate::error::{Error, Result};
use crate::kerov::verify_kerov;
use crate::measures::{verify_coherence, verify_dimension_formula, verify_ivanov, Alpha};
use crate::operators::{
    verify_b_commutes_with_p1, verify_b_tilde_top_component, verify_g_basis_leading_terms, verify_quotient_operator,
    verify_sl2, verify_tn_on_qstar,
};
use crate::par::Exec;
use crate::rational::ratio;
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Coherence,
    Kerov,
    Ivanov,
    QstarAction,
    GBasisLeading,
    BTilde,
    QuotientOperator,
    Sl2,
    Spectrum,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Coherence,
        Suite::Kerov,
        Suite::Ivanov,
        Suite::QstarAction,
        Suite::GBasisLeading,
        Suite::BTilde,
        Suite::QuotientOperator,
        Suite::Sl2,
        Suite::Spectrum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coherence => "coherence",
            Suite::Kerov => "kerov",
            Suite::Ivanov => "ivanov",
            Suite::QstarAction => "thm27",
            Suite::GBasisLeading => "thm42",
            Suite::BTilde => "thm51",
            Suite::QuotientOperator => "prop68",
            Suite::Sl2 => "sl2",
            Suite::Spectrum => "spectrum",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; expected one of {}", names())))
    }
}

fn names() -> String {
    Suite::ALL.map(Suite::name).join(", ")
}

/// Runs one battery with weights (or degrees) up to `max_weight`.
///
/// The symbolic suites clamp their bounds: `thm27` to `|μ| ≤ 5`, `thm42` to degree 7,
/// `prop68` to `|μ| ≤ 6`.
pub fn run_suite(suite: Suite, max_weight: usize, alpha: &Alpha, exec: Exec) -> Result<VerificationReport> {
    let w = max_weight;
    let mut report = VerificationReport::new(suite.name()).with_param("max_weight", w).with_param("alpha", alpha);
    match suite {
        Suite::Coherence => {
            for n in 1..=w {
                report.extend(verify_coherence(n, alpha)?);
                report.extend(verify_transition_matrix(&transition_matrix_with(n, alpha, exec)?)?);
            }
        }
        Suite::Kerov => report.extend(verify_kerov(w, 8, exec)),
        Suite::Ivanov => {
            report.extend(verify_dimension_formula(w));
            report.extend(verify_ivanov(w, exec));
        }
        Suite::QstarAction => {
            let a = alpha.require_finite()?;
            report.extend(verify_tn_on_qstar(w.min(5), w, a)?);
            for n in 0..w.min(6) {
                report.extend(verify_function_operators(n, a, w.min(4))?);
            }
        }
        Suite::GBasisLeading => report.extend(verify_g_basis_leading_terms(alpha.require_finite()?, w.min(7))?),
        Suite::BTilde => {
            let a = alpha.require_finite()?;
            report.extend(verify_b_tilde_top_component(a, w)?);
            report.extend(verify_b_commutes_with_p1(a, w));
        }
        Suite::QuotientOperator => report.extend(verify_quotient_operator(alpha.require_finite()?, w.min(6), w)),
        Suite::Sl2 => report.extend(verify_sl2(alpha.require_finite()?, w)?),
        Suite::Spectrum => {
            for n in 1..=w {
                report.extend(verify_spectrum(n, alpha, &ratio(1, 1_000_000_000))?);
            }
        }
    }
    Ok(report)
}
