//! Seed-median summaries of a results ledger as markdown tables and SVG charts.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::budget::Pairing;
use super::metrics::median;
use super::study::RunResult;
use crate::mf::MethodId;

/// Median over seeds of one (method, pairing, budget) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub method: MethodId,
    pub pairing: Pairing,
    pub budget: usize,
    pub n_lf: usize,
    pub n_mf: usize,
    pub n_hf: usize,
    pub seeds: usize,
    pub rmse: f64,
    pub r2: f64,
    pub wall_time_s: f64,
}

type GroupKey = (String, String);

fn method_rank(m: MethodId) -> usize {
    MethodId::ALL.iter().position(|x| *x == m).unwrap_or(usize::MAX)
}

/// Groups by (subset, output), then orders by pairing, budget and method.
pub fn summarize(results: &[RunResult]) -> BTreeMap<GroupKey, Vec<SummaryRow>> {
    let mut cells: BTreeMap<GroupKey, BTreeMap<(Pairing, usize, usize), Vec<&RunResult>>> = BTreeMap::new();
    for r in results {
        cells
            .entry((r.subset.clone(), r.output.clone()))
            .or_default()
            .entry((r.pairing, r.budget, method_rank(r.method)))
            .or_default()
            .push(r);
    }
    cells
        .into_iter()
        .map(|(g, runs)| {
            let rows = runs
                .into_values()
                .map(|rs| {
                    let pick = |f: fn(&RunResult) -> f64| median(&rs.iter().map(|r| f(r)).collect::<Vec<_>>());
                    let first = rs[0];
                    SummaryRow {
                        method: first.method,
                        pairing: first.pairing,
                        budget: first.budget,
                        n_lf: first.n_lf,
                        n_mf: first.n_mf,
                        n_hf: first.n_hf,
                        seeds: rs.len(),
                        rmse: pick(|r| r.rmse),
                        r2: pick(|r| r.r2),
                        wall_time_s: pick(|r| r.wall_time_s),
                    }
                })
                .collect();
            (g, rows)
        })
        .collect()
}

fn cell(v: f64, digits: usize) -> String {
    if v.is_finite() {
        format!("{v:.digits$}")
    } else {
        "n/a".into()
    }
}

pub fn markdown_report(results: &[RunResult]) -> String {
    let mut s = String::from("# Cost-matched results\n\nValues are medians over seeds.\n");
    for ((subset, output), rows) in summarize(results) {
        let _ = writeln!(s, "\n## {output} / inputs: {subset}\n");
        s.push_str("| Method | Pairing | Budget | n_LF | n_MF | n_HF | RMSE | R² | Time (s) |\n");
        s.push_str("|---|---|---|---|---|---|---|---|---|\n");
        for r in rows {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                r.method,
                r.pairing,
                r.budget,
                r.n_lf,
                r.n_mf,
                r.n_hf,
                cell(r.rmse, 4),
                cell(r.r2, 4),
                cell(r.wall_time_s, 2)
            );
        }
    }
    s
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// Median RMSE against budget, one line per method, for one group and pairing.
pub fn rmse_chart_svg(rows: &[SummaryRow], pairing: Pairing, title: &str) -> String {
    let mut lines: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for r in rows.iter().filter(|r| r.pairing == pairing && r.rmse.is_finite()) {
        lines.entry(method_rank(r.method)).or_default().push((r.budget, r.rmse));
    }
    let (w, h, pad) = (640.0, 400.0, 60.0);
    let budgets: Vec<f64> = lines.values().flatten().map(|p| p.0 as f64).collect();
    let vals: Vec<f64> = lines.values().flatten().map(|p| p.1).collect();
    let span = |v: &[f64]| {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() {
            (0.0, 1.0)
        } else if hi - lo < 1e-12 {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    };
    let (bx0, bx1) = span(&budgets);
    let (y0, y1) = span(&vals);
    let y0 = y0.min(0.0);
    let px = |b: f64| pad + (b - bx0) / (bx1 - bx0) * (w - 2.0 * pad);
    let py = |v: f64| h - pad - (v - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, w / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<line x1="{pad}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{pad}" y1="{pad}" x2="{pad}" y2="{b}" stroke="black"/>"#,
        b = h - pad,
        r = w - pad
    );
    let mut ticks: Vec<usize> = lines.values().flatten().map(|p| p.0).collect();
    ticks.sort_unstable();
    ticks.dedup();
    for t in ticks {
        let _ = writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle">{t}</text>"#, px(t as f64), h - pad + 18.0);
    }
    for i in 0..=4 {
        let v = y0 + (y1 - y0) * i as f64 / 4.0;
        let _ = writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#, pad - 6.0, py(v) + 4.0, format_tick(v));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">budget</text>"#, w / 2.0, h - 15.0);
    let _ = writeln!(s, r#"<text x="15" y="{}" transform="rotate(-90 15 {})" text-anchor="middle">median RMSE</text>"#, h / 2.0, h / 2.0);
    for (k, (rank, mut pts)) in lines.into_iter().enumerate() {
        pts.sort_by_key(|p| p.0);
        let color = PALETTE[rank % PALETTE.len()];
        let path: Vec<String> = pts.iter().map(|(b, v)| format!("{:.1},{:.1}", px(*b as f64), py(*v))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#, path.join(" "));
        for (b, v) in &pts {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#, px(*b as f64), py(*v));
        }
        let ly = pad + 16.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly:.1}" fill="{color}">{}</text>"#,
            w - pad + 4.0,
            MethodId::ALL[rank]
        );
    }
    s.push_str("</svg>\n");
    s
}

fn format_tick(v: f64) -> String {
    if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(method: MethodId, budget: usize, seed: u64, rmse: f64) -> RunResult {
        RunResult {
            method,
            pairing: Pairing::LfHf,
            budget,
            subset: "all".into(),
            output: "time_to_onc".into(),
            seed,
            rmse,
            r2: 1.0 - rmse,
            wall_time_s: 0.1,
            n_lf: 200,
            n_mf: 0,
            n_hf: 25,
        }
    }

    #[test]
    fn medians_per_cell() {
        let rs = vec![
            run(MethodId::Delta, 300, 0, 0.3),
            run(MethodId::Delta, 300, 1, 0.1),
            run(MethodId::Delta, 300, 2, 0.2),
            run(MethodId::MfGp, 300, 0, 0.5),
        ];
        let g = summarize(&rs);
        let rows = &g[&("all".to_string(), "time_to_onc".to_string())];
        assert_eq!(rows.len(), 2);
        let d = rows.iter().find(|r| r.method == MethodId::Delta).unwrap();
        assert_eq!(d.seeds, 3);
        assert!((d.rmse - 0.2).abs() < 1e-12);
        let md = markdown_report(&rs);
        assert!(md.contains("| delta | lf+hf | 300 | 200 | 0 | 25 | 0.2000 |"));
    }

    #[test]
    fn chart_has_one_line_per_method() {
        let rs = vec![
            run(MethodId::Delta, 300, 0, 0.3),
            run(MethodId::Delta, 600, 0, 0.2),
            run(MethodId::Flag, 300, 0, 0.4),
            run(MethodId::Flag, 600, 0, f64::NAN),
        ];
        let rows = summarize(&rs).into_values().next().unwrap();
        let svg = rmse_chart_svg(&rows, Pairing::LfHf, "a <b>");
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("a &lt;b&gt;"));
        assert!(!svg.contains("NaN"));
    }
}
