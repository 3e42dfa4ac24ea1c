//! Seeded generation of pure balanced cases and the verification suite.
//!
//! Cases are built directly rather than by rejection on the balanced
//! interval. Writing `x_i = nu_i + j`, the interlacing conditions say
//! `x_i` lies in `[-mu_{n-i}, -mu_{n+1-i}]` at every embedding, and purity of
//! `nu` becomes `x^iota_i + x^iotabar_{n-i} = W` for a constant `W`. Both
//! hold at once exactly when `W = -w_mu`, so the `iota` row of `x` is drawn
//! inside its windows and the other row is its mirror. The twist `j` is then
//! drawn among the values keeping `nu` inside the entry bound.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{ArchCharacter, EpsilonChoice};
use crate::error::{Error, Result};
use crate::gamma::Reduced;
use crate::period::{verify_archimedean, Case, VerificationReport};
use crate::weights::{FieldKind, Weight};

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub cases: usize,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub entry_bound: i64,
    pub fields: Vec<FieldKind>,
    pub eps_psi: Vec<i8>,
    /// Powers of `sgn` used for `chi` over `R`; over `C` only the trivial
    /// character has finite order.
    pub chi: Vec<u8>,
    pub constancy_tol: f64,
    pub match_tol: f64,
    /// Worker threads; `0` lets rayon decide.
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cases: 500,
            seed: 42,
            n_min: 2,
            n_max: 5,
            entry_bound: 6,
            fields: vec![FieldKind::Real, FieldKind::Complex],
            eps_psi: vec![1, -1],
            chi: vec![0, 1],
            constancy_tol: 1e-8,
            match_tol: 1e-6,
            threads: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.to_string()));
        if self.n_min < 2 || self.n_max < self.n_min {
            return bad("need 2 <= n_min <= n_max");
        }
        if self.entry_bound < 1 {
            return bad("entry_bound must be positive");
        }
        if self.fields.is_empty() || self.eps_psi.is_empty() || self.chi.is_empty() {
            return bad("fields, eps_psi and chi must be non-empty");
        }
        if self.eps_psi.iter().any(|e| *e != 1 && *e != -1) {
            return bad("eps_psi values must be +1 or -1");
        }
        if self.chi.iter().any(|c| *c > 1) {
            return bad("chi values must be 0 or 1");
        }
        if !(self.constancy_tol > 0.0 && self.match_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        Ok(())
    }
}

fn sorted_desc(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// A pure weight with entries in `[-bound, bound]`.
pub fn random_pure_weight(rng: &mut impl Rng, field: FieldKind, n: usize, bound: i64) -> Weight {
    loop {
        let rows = match field {
            FieldKind::Real => {
                let half = n.div_ceil(2);
                let head = sorted_desc((0..half).map(|_| rng.gen_range(-bound..=bound)).collect());
                let w = if n % 2 == 1 {
                    2 * head[half - 1]
                } else {
                    rng.gen_range(-2 * bound..=2 * bound)
                };
                if w > 2 * head[half - 1] {
                    continue;
                }
                let mut row = head.clone();
                for k in (half + 1)..=n {
                    row.push(w - head[n - k]);
                }
                vec![row]
            }
            FieldKind::Complex => {
                let iota = sorted_desc((0..n).map(|_| rng.gen_range(-bound..=bound)).collect());
                let w = rng.gen_range(-bound..=bound);
                let bar = (1..=n).map(|k| w - iota[n - k]).collect();
                vec![iota, bar]
            }
        };
        if rows.iter().flatten().all(|x| x.abs() <= bound) {
            if let Ok(w) = Weight::new(field, rows) {
                return w;
            }
        }
    }
}

/// A pure `(mu, nu, j)` balanced at `j`, entries in `[-bound, bound]`.
pub fn random_balanced_triple(
    rng: &mut impl Rng,
    field: FieldKind,
    n: usize,
    bound: i64,
) -> Result<(Weight, Weight, i64)> {
    for _ in 0..MAX_ATTEMPTS {
        let mu = random_pure_weight(rng, field, n, bound);
        let w = crate::weights::is_pure(&mu).expect("constructed pure");
        let big_w = -w;
        let m = n - 1;
        let row = mu.row(0);
        // window for x_i (1-based) is [-mu_{n-i}, -mu_{n+1-i}]
        let window = |i: usize| (-row[n - i - 1], -row[n - i]);
        let mut x = vec![0i64; m];
        let mut ok = true;
        for i in 1..=m {
            let partner = m - i + 1;
            if field == FieldKind::Real && partner < i {
                x[i - 1] = big_w - x[partner - 1];
            } else if field == FieldKind::Real && partner == i {
                if big_w % 2 != 0 {
                    ok = false;
                    break;
                }
                x[i - 1] = big_w / 2;
            } else {
                let (lo, hi) = window(i);
                x[i - 1] = rng.gen_range(lo..=hi);
            }
        }
        if !ok {
            continue;
        }
        let mut rows = vec![x.clone()];
        if field == FieldKind::Complex {
            rows.push((1..=m).map(|k| big_w - x[m - k]).collect());
        }
        let max = rows.iter().flatten().copied().max().unwrap_or(0);
        let min = rows.iter().flatten().copied().min().unwrap_or(0);
        let (j_lo, j_hi) = (max - bound, min + bound);
        if j_lo > j_hi {
            continue;
        }
        let j = rng.gen_range(j_lo..=j_hi);
        let nu_rows = rows.iter().map(|r| r.iter().map(|v| v - j).collect()).collect();
        let nu = Weight::new(field, nu_rows)?;
        return Ok((mu, nu, j));
    }
    Err(Error::InvalidArgument(format!("could not sample a balanced pair for n = {n}, bound = {bound}")))
}

/// The `id`-th case of the corpus. Parameters cycle with `id` so that every
/// rank, field, `eps_psi`, `chi` and sign choice appears; the weights come
/// from a per-case stream of the seeded generator.
pub fn generate_case(config: &SuiteConfig, id: usize) -> Result<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(id as u64);

    let ranks = config.n_max - config.n_min + 1;
    let mut k = id;
    let mut next = |len: usize| {
        let v = k % len;
        k /= len;
        v
    };
    let n = config.n_min + next(ranks);
    let field = config.fields[next(config.fields.len())];
    let eps_psi = config.eps_psi[next(config.eps_psi.len())];
    let chi = match field {
        FieldKind::Real => ArchCharacter::quadratic(field, config.chi[next(config.chi.len())]),
        FieldKind::Complex => ArchCharacter::TRIVIAL_COMPLEX,
    };
    let choices = EpsilonChoice::all_valid(field, n);
    let eps = if choices.len() > 1 {
        *choices.choose(&mut rng).expect("non-empty")
    } else {
        choices[0]
    };

    let (mu, nu, j) = random_balanced_triple(&mut rng, field, n, config.entry_bound)?;
    Ok(Case { mu, nu, j, chi, eps, eps_psi })
}

pub fn generate_corpus(config: &SuiteConfig) -> Result<Vec<Case>> {
    config.validate()?;
    (0..config.cases).map(|id| generate_case(config, id)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub id: usize,
    #[serde(flatten)]
    pub report: VerificationReport,
    pub numeric_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub total: usize,
    pub exact_matches: usize,
    pub not_constant: usize,
    pub numeric_failures: usize,
    /// Cases that did not match exactly or failed the numeric check, by id.
    pub failures: Vec<CaseOutcome>,
    pub config: SuiteConfig,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.exact_matches == self.total && self.numeric_failures == 0
    }
}

pub fn numeric_ok(report: &VerificationReport, config: &SuiteConfig) -> bool {
    matches!(report.residuals.constancy, Some(c) if c < config.constancy_tol)
        && matches!(report.residuals.match_, Some(m) if m < config.match_tol)
}

fn verify_all(config: &SuiteConfig, cases: &[Case]) -> Result<Vec<CaseOutcome>> {
    cases
        .par_iter()
        .enumerate()
        .map(|(id, case)| {
            let report = verify_archimedean(case)?;
            let numeric_ok = numeric_ok(&report, config);
            Ok(CaseOutcome { id, report, numeric_ok })
        })
        .collect()
}

/// Generates the corpus and verifies every case.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let cases = generate_corpus(config)?;
    let outcomes = if config.threads == 0 {
        verify_all(config, &cases)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| verify_all(config, &cases))?
    };

    let mut failures: Vec<CaseOutcome> =
        outcomes.iter().filter(|o| !o.report.exact_match || !o.numeric_ok).cloned().collect();
    failures.sort_by_key(|o| o.id);
    Ok(SuiteReport {
        total: outcomes.len(),
        exact_matches: outcomes.iter().filter(|o| o.report.exact_match).count(),
        not_constant: outcomes.iter().filter(|o| o.report.constant == Reduced::NotConstant).count(),
        numeric_failures: outcomes.iter().filter(|o| !o.numeric_ok).count(),
        failures,
        config: config.clone(),
    })
}
