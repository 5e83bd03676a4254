use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::RegretCurve;
use crate::error::{Error, Result};
use crate::graph::CoverStats;
use crate::numfmt::format_sig;

pub const CSV_HEADER: &str = "policy,t,mean_per_step_regret,stderr,num_cliques";

/// Rows sorted by `(policy, t)`, floats at 9 significant digits. The
/// `num_cliques` column repeats the cover size on every row so plots can mark
/// the round by which every arm has been observed.
pub fn format_csv(curves: &[RegretCurve], cover_info: &CoverStats) -> String {
    let mut rows: Vec<(&str, u64, f64, f64)> = curves
        .iter()
        .flat_map(|c| {
            c.points
                .iter()
                .map(move |p| (c.policy.as_str(), p.t, p.mean_per_step_regret, p.stderr))
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));

    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (policy, t, mean, stderr) in rows {
        let _ = writeln!(
            out,
            "{policy},{t},{},{},{}",
            format_sig(mean, 9),
            format_sig(stderr, 9),
            cover_info.num_cliques
        );
    }
    out
}

pub fn write_csv(
    curves: &[RegretCurve],
    cover_info: &CoverStats,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_csv(curves, cover_info)).map_err(|e| Error::io(path, e))
}
