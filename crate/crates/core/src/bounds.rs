//! Closed-form regret bounds.
//!
//! All bounds have the shape `A ln n + B (+ residual)`. For a clique cover the
//! log coefficient is `8 Σ_C max_{i∈C} Δ_i / Δ_C²` with `Δ_C = min_{i∈C} Δ_i`.
//! A clique that mixes an optimal arm with a suboptimal one has `Δ_C = 0` and
//! makes the coefficient infinite; such cliques are listed in
//! [`CoverBoundReport::infinite_cliques`]. A clique of optimal arms only
//! contributes nothing.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::environment::GapProfile;
use crate::error::{Error, Result};
use crate::graph::CliqueCover;
use crate::numfmt::format_sig;

/// `1 + π²/3`.
pub fn tail_constant() -> f64 {
    1.0 + PI * PI / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// UCB1 bound without side information.
    Ucb1,
    /// UCB-N clique-cover bound.
    Thm2,
    /// UCB-MaxN clique-cover bound with its vanishing residual.
    Thm3,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Ucb1 => "ucb1",
            BoundKind::Thm2 => "thm2",
            BoundKind::Thm3 => "thm3",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverBoundReport {
    pub which: BoundKind,
    /// Multiplier of `ln n`; `+inf` if some clique has `Δ_C = 0 < max Δ_i`.
    pub log_coefficient: f64,
    pub constant_term: f64,
    /// Zero except for [`BoundKind::Thm3`].
    pub residual_term: f64,
    pub total_at_n: f64,
    pub horizon_n: u64,
    /// Indices (into the cover) of cliques with an infinite contribution.
    pub infinite_cliques: Vec<usize>,
}

impl CoverBoundReport {
    fn assemble(
        which: BoundKind,
        log_coefficient: f64,
        constant_term: f64,
        residual_term: f64,
        n: u64,
        infinite_cliques: Vec<usize>,
    ) -> Self {
        let total_at_n = log_coefficient * (n as f64).ln() + constant_term + residual_term;
        Self {
            which,
            log_coefficient,
            constant_term,
            residual_term,
            total_at_n,
            horizon_n: n,
            infinite_cliques,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.total_at_n.is_finite()
    }
}

fn check_horizon(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "horizon must be at least 2, got {n}"
        )));
    }
    Ok(())
}

/// `8 (Σ_{i: Δ_i > 0} 1/Δ_i) ln n + (1 + π²/3) Σ_i Δ_i`.
pub fn ucb1_regret_bound(gaps: &GapProfile, n: u64) -> Result<CoverBoundReport> {
    check_horizon(n)?;
    let log_coefficient = 8.0
        * gaps
            .gaps
            .iter()
            .filter(|&&d| d > 0.0)
            .map(|&d| 1.0 / d)
            .sum::<f64>();
    let constant = tail_constant() * gaps.gaps.iter().sum::<f64>();
    Ok(CoverBoundReport::assemble(
        BoundKind::Ucb1,
        log_coefficient,
        constant,
        0.0,
        n,
        Vec::new(),
    ))
}

struct CliqueGaps {
    max: f64,
    min: f64,
}

fn clique_gaps(gaps: &GapProfile, cover: &CliqueCover) -> Result<Vec<CliqueGaps>> {
    if cover.num_arms() != gaps.num_arms() {
        return Err(Error::invalid(format!(
            "cover over {} arms, instance has {}",
            cover.num_arms(),
            gaps.num_arms()
        )));
    }
    if !cover.covers_all() {
        return Err(Error::invalid(format!(
            "cover reaches {} of {} arms; the bound needs a full cover",
            cover.covered().len(),
            cover.num_arms()
        )));
    }
    Ok(cover
        .cliques()
        .iter()
        .map(|c| {
            let it = c.members().iter().map(|&i| gaps.gaps[i]);
            CliqueGaps {
                max: it.clone().fold(f64::NEG_INFINITY, f64::max),
                min: it.fold(f64::INFINITY, f64::min),
            }
        })
        .collect())
}

/// Shared log coefficient of the clique-cover bounds.
fn cover_log_coefficient(per_clique: &[CliqueGaps]) -> (f64, Vec<usize>) {
    let mut total = 0.0;
    let mut infinite = Vec::new();
    for (idx, g) in per_clique.iter().enumerate() {
        if g.max == 0.0 {
            continue;
        }
        if g.min == 0.0 {
            infinite.push(idx);
            continue;
        }
        total += g.max / (g.min * g.min);
    }
    let coefficient = if infinite.is_empty() {
        8.0 * total
    } else {
        f64::INFINITY
    };
    (coefficient, infinite)
}

/// UCB-N bound for one cover:
/// `8 Σ_C (max_C Δ / Δ_C²) ln n + (1 + π²/3) Σ_i Δ_i`.
pub fn clique_cover_bound_thm2(
    gaps: &GapProfile,
    cover: &CliqueCover,
    n: u64,
) -> Result<CoverBoundReport> {
    check_horizon(n)?;
    let per_clique = clique_gaps(gaps, cover)?;
    let (log_coefficient, infinite) = cover_log_coefficient(&per_clique);
    let constant = tail_constant() * gaps.gaps.iter().sum::<f64>();
    Ok(CoverBoundReport::assemble(
        BoundKind::Thm2,
        log_coefficient,
        constant,
        0.0,
        n,
        infinite,
    ))
}

/// UCB-MaxN bound for one cover: the thm2 log term, a constant
/// `(1 + π²/3) Σ_C Δ_C`, and the residual
///
/// ```text
/// Σ_C 2 Σ_{i∈C, δ_i>0} Δ_i (1 - e^{-n δ_i²/2}) / (1 - e^{-δ_i²/2}) · n^{-4 δ_i² / Δ_C²}
/// ```
///
/// with `δ_i = Δ_i - Δ_C`. The residual vanishes as `n → ∞`.
pub fn clique_cover_bound_thm3(
    gaps: &GapProfile,
    cover: &CliqueCover,
    n: u64,
) -> Result<CoverBoundReport> {
    check_horizon(n)?;
    let per_clique = clique_gaps(gaps, cover)?;
    let (log_coefficient, infinite) = cover_log_coefficient(&per_clique);
    let constant = tail_constant() * per_clique.iter().map(|g| g.min).sum::<f64>();

    let nf = n as f64;
    let ln_n = nf.ln();
    let mut residual = 0.0;
    for (clique, g) in cover.cliques().iter().zip(&per_clique) {
        // Δ_C = 0 cliques are either empty of regret or already infinite.
        if g.min == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for &i in clique.members() {
            let gap = gaps.gaps[i];
            let delta = gap - g.min;
            if delta <= 0.0 {
                continue;
            }
            let d2 = delta * delta;
            let geometric = -(-nf * d2 / 2.0).exp_m1() / -(-d2 / 2.0).exp_m1();
            let decay = (-4.0 * d2 / (g.min * g.min) * ln_n).exp();
            inner += gap * geometric * decay;
        }
        residual += 2.0 * inner;
    }

    Ok(CoverBoundReport::assemble(
        BoundKind::Thm3,
        log_coefficient,
        constant,
        residual,
        n,
        infinite,
    ))
}

/// Two-sample tail bound: `P(X̄_n > Ȳ_m) <= 2 exp(-min(n, m) gap² / 2)` for
/// `[0, 1]`-valued samples whose means differ by `gap`.
pub fn lemma1_tail_bound(gap: f64, n: u64, m: u64) -> Result<f64> {
    if gap.is_nan() || gap <= 0.0 {
        return Err(Error::invalid(format!("gap must be positive, got {gap}")));
    }
    if n == 0 || m == 0 {
        return Err(Error::invalid("sample sizes must be at least 1"));
    }
    Ok(2.0 * (-(n.min(m) as f64) * gap * gap / 2.0).exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestBound {
    pub best_cover_index: usize,
    pub report: CoverBoundReport,
}

/// Minimises the chosen cover bound over an explicit list of candidate covers
/// (ties go to the earlier cover).
pub fn best_bound_over_covers(
    gaps: &GapProfile,
    covers: &[CliqueCover],
    n: u64,
    which: BoundKind,
) -> Result<BestBound> {
    if covers.is_empty() {
        return Err(Error::invalid("no candidate covers"));
    }
    let mut best: Option<BestBound> = None;
    for (idx, cover) in covers.iter().enumerate() {
        let report = match which {
            BoundKind::Thm2 => clique_cover_bound_thm2(gaps, cover, n)?,
            BoundKind::Thm3 => clique_cover_bound_thm3(gaps, cover, n)?,
            BoundKind::Ucb1 => {
                return Err(Error::invalid("the UCB1 bound does not depend on a cover"))
            }
        };
        let better = match &best {
            None => true,
            Some(b) => report.total_at_n < b.report.total_at_n,
        };
        if better {
            best = Some(BestBound {
                best_cover_index: idx,
                report,
            });
        }
    }
    Ok(best.expect("nonempty cover list"))
}

pub const BOUND_CSV_HEADER: &str =
    "which,cover_id,log_coefficient,constant_term,residual_term,n,total";

/// Renders bound reports as CSV; `cover_id` is the caller's label for the cover.
pub fn format_bound_csv(rows: &[(String, CoverBoundReport)]) -> String {
    let mut out = String::from(BOUND_CSV_HEADER);
    out.push('\n');
    for (cover_id, r) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.which.name(),
            cover_id,
            format_sig(r.log_coefficient, 9),
            format_sig(r.constant_term, 9),
            format_sig(r.residual_term, 9),
            r.horizon_n,
            format_sig(r.total_at_n, 9),
        );
    }
    out
}

pub fn write_bound_csv(rows: &[(String, CoverBoundReport)], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_bound_csv(rows)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Clique;

    fn cover(k: usize, cliques: &[&[usize]]) -> CliqueCover {
        CliqueCover::from_cliques(
            k,
            cliques
                .iter()
                .map(|c| Clique::new(c.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn gaps(means: &[f64]) -> GapProfile {
        GapProfile::from_means(means).unwrap()
    }

    #[test]
    fn ucb1_bound_examples() {
        let g = gaps(&[0.9, 0.5]);
        let r = ucb1_regret_bound(&g, 100).unwrap();
        assert!((r.log_coefficient - 20.0).abs() < 1e-9);
        // 20 ln 100 + 4.289868 * 0.4
        assert!((r.total_at_n - 93.8193).abs() < 1e-3, "{}", r.total_at_n);
        assert_eq!(r.residual_term, 0.0);

        let flat = ucb1_regret_bound(&gaps(&[0.3, 0.3]), 50).unwrap();
        assert_eq!(flat.total_at_n, 0.0);

        let r2 = ucb1_regret_bound(&g, 200).unwrap();
        assert!((r2.total_at_n - r.total_at_n - 20.0 * 2f64.ln()).abs() < 1e-9);

        assert!(ucb1_regret_bound(&g, 1).is_err());
    }

    #[test]
    fn thm2_examples() {
        let g = gaps(&[0.9, 0.5, 0.4]);
        let trivial =
            clique_cover_bound_thm2(&g, &CliqueCover::trivial(3).unwrap(), 10_000).unwrap();
        let eq2 = ucb1_regret_bound(&g, 10_000).unwrap();
        assert!((trivial.total_at_n - eq2.total_at_n).abs() < 1e-9);

        let r = clique_cover_bound_thm2(&g, &cover(3, &[&[0], &[1, 2]]), 10_000).unwrap();
        assert!((r.log_coefficient - 8.0 * 0.5 / 0.16).abs() < 1e-9);
        assert!((r.total_at_n - 234.12).abs() < 5e-3, "{}", r.total_at_n);

        let mixed = clique_cover_bound_thm2(&g, &cover(3, &[&[0, 1], &[2]]), 10_000).unwrap();
        assert_eq!(mixed.total_at_n, f64::INFINITY);
        assert_eq!(mixed.infinite_cliques, vec![0]);

        let partial = cover(3, &[&[0], &[1]]);
        assert!(clique_cover_bound_thm2(&g, &partial, 100).is_err());
    }

    #[test]
    fn all_optimal_clique_contributes_nothing() {
        let g = gaps(&[0.8, 0.8, 0.2]);
        let r = clique_cover_bound_thm2(&g, &cover(3, &[&[0, 1], &[2]]), 100).unwrap();
        assert!(r.is_finite());
        assert!((r.log_coefficient - 8.0 / 0.6).abs() < 1e-9);
    }

    #[test]
    fn thm3_examples() {
        let g = gaps(&[0.9, 0.5, 0.4]);
        let trivial =
            clique_cover_bound_thm3(&g, &CliqueCover::trivial(3).unwrap(), 10_000).unwrap();
        let eq2 = ucb1_regret_bound(&g, 10_000).unwrap();
        assert_eq!(trivial.residual_term, 0.0);
        assert!((trivial.total_at_n - eq2.total_at_n).abs() < 1e-9);

        let r = clique_cover_bound_thm3(&g, &cover(3, &[&[0], &[1, 2]]), 10_000).unwrap();
        assert!((r.log_coefficient * 10_000f64.ln() - 230.26).abs() < 5e-3);
        assert!((r.constant_term - 1.716).abs() < 5e-4);
        assert!(
            (r.residual_term - 20.05).abs() < 5e-3,
            "{}",
            r.residual_term
        );
        assert!((r.total_at_n - 252.03).abs() < 1e-2, "{}", r.total_at_n);

        // 200.5 * n^(-1/4) once n δ² is large
        let mut prev = r.residual_term;
        for n in [1u64 << 20, 1 << 30, 1 << 40, 1 << 60] {
            let far = clique_cover_bound_thm3(&g, &cover(3, &[&[0], &[1, 2]]), n).unwrap();
            assert!(far.residual_term < prev);
            prev = far.residual_term;
        }
        assert!(prev < 7e-3, "{prev}");
    }

    #[test]
    fn lemma1_examples() {
        assert!((lemma1_tail_bound(0.5, 8, 8).unwrap() - 0.735759).abs() < 1e-6);
        let mut prev = f64::INFINITY;
        for n in [1, 10, 100, 1000] {
            let b = lemma1_tail_bound(0.3, n, n + 5).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(lemma1_tail_bound(1e-9, 3, 3).unwrap() > 1.999);
        assert!(lemma1_tail_bound(0.0, 3, 3).is_err());
        assert!(lemma1_tail_bound(-0.1, 3, 3).is_err());
        assert!(lemma1_tail_bound(0.1, 0, 3).is_err());
    }

    #[test]
    fn best_cover_selection() {
        let g = gaps(&[0.9, 0.5, 0.4]);
        let trivial = CliqueCover::trivial(3).unwrap();
        let single =
            best_bound_over_covers(&g, std::slice::from_ref(&trivial), 10_000, BoundKind::Thm2)
                .unwrap();
        assert_eq!(single.best_cover_index, 0);

        let grouped = cover(3, &[&[0], &[1, 2]]);
        let b = best_bound_over_covers(&g, &[trivial.clone(), grouped], 10_000, BoundKind::Thm2)
            .unwrap();
        assert_eq!(b.best_cover_index, 1);
        let t = clique_cover_bound_thm2(&g, &trivial, 10_000).unwrap();
        assert!((t.total_at_n - 335.43).abs() < 5e-3, "{}", t.total_at_n);

        let mixed = cover(3, &[&[0, 1, 2]]);
        let b =
            best_bound_over_covers(&g, &[mixed.clone(), trivial], 100, BoundKind::Thm3).unwrap();
        assert_eq!(b.best_cover_index, 1);
        let b = best_bound_over_covers(&g, &[mixed], 100, BoundKind::Thm3).unwrap();
        assert_eq!(b.report.total_at_n, f64::INFINITY);

        assert!(best_bound_over_covers(&g, &[], 100, BoundKind::Thm2).is_err());
    }

    #[test]
    fn bound_csv() {
        let g = gaps(&[0.9, 0.5]);
        let rows = vec![
            ("eq2".to_string(), ucb1_regret_bound(&g, 100).unwrap()),
            (
                "mixed".to_string(),
                clique_cover_bound_thm2(&g, &cover(2, &[&[0, 1]]), 100).unwrap(),
            ),
        ];
        let text = format_bound_csv(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], BOUND_CSV_HEADER);
        assert!(lines[1].starts_with("ucb1,eq2,20,1.71594725,0,100,93.819"));
        assert!(lines[2].ends_with(",100,inf"));
        assert!(lines[2].starts_with("thm2,mixed,inf,"));
    }
}
