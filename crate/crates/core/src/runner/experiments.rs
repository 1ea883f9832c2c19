use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::{svg_line_plot, Artifact, Experiment, ExperimentConfig, Outcome, PlotSeries, SequenceFamily};
use crate::analysis::{
    dyadic_increments, growth_exponent, holder_quotient, ratio_profile_with_margin, sumdiv_subsequence,
    threshold_verdict, weiss_at, weiss_trace, MIN_RADIUS_CELLS,
};
use crate::elliptic::{
    assemble, solve_pair_with, solve_with, CoefficientField, Dirichlet, PairOptions, RhsSpec, ScalarField,
};
use crate::error::{Error, Result};
use crate::geometry::{make_sector, rasterize, DomainKind, DomainSpec};
use crate::heleshaw::{wets_corner_traced, INITIAL_RADIUS_CELLS};
use crate::spectral::{alpha_axisymmetric, alpha_sector, fredholm_residual, sector_report};

pub(super) fn dispatch(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.experiment {
        Experiment::Alpha => alpha(cfg),
        Experiment::Pair => pair(cfg),
        Experiment::Ratio => ratio(cfg),
        Experiment::Growth => growth(cfg),
        Experiment::Weiss => weiss(cfg),
        Experiment::Fredholm => fredholm(cfg),
        Experiment::Holder => holder(cfg),
        Experiment::Sumdiv => sumdiv(cfg),
        Experiment::Heleshaw => heleshaw(cfg),
        Experiment::ThresholdSweep => threshold_sweep(cfg),
    }
}

#[derive(Default)]
struct Builder {
    files: Vec<Artifact>,
    summary: BTreeMap<String, Value>,
}

impl Builder {
    fn put(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), serde_json::to_value(value).expect("summary value serializes"));
    }

    fn file(&mut self, name: &str, bytes: impl Into<Vec<u8>>) {
        self.files.push(Artifact::new(name, bytes));
    }

    fn finish(self, report: Value) -> Outcome {
        Outcome { report, files: self.files, summary: self.summary }
    }
}

fn table(experiment: &str, h: Option<f64>, header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = match h {
        Some(h) => format!("# experiment={experiment} h={h}\n"),
        None => format!("# experiment={experiment}\n"),
    };
    s.push_str(header);
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

fn num(x: f64) -> String {
    format!("{x:.17e}")
}

/// Exponent of the domain's positive harmonic function: exact for sectors
/// and cones, the inscribed cone `{x₂ > L|x₁|}` for graphs.
fn reference_alpha(spec: &DomainSpec) -> Result<Option<f64>> {
    Ok(match spec.kind() {
        DomainKind::Sector => Some(alpha_sector(spec.aperture().expect("sector has an aperture"), 1)?),
        DomainKind::Cone => Some(alpha_axisymmetric(spec.dim(), spec.half_aperture(), 1)?.alpha1),
        DomainKind::LipschitzGraph => {
            let l = spec.slope().unwrap_or(0.0);
            Some(alpha_sector(PI - 2.0 * l.atan(), 1)?)
        }
        DomainKind::Ball | DomainKind::Polygon => None,
    })
}

fn default_anchor(cfg: &ExperimentConfig, dim: usize) -> Result<[f64; 3]> {
    let mut a = [0.0; 3];
    match &cfg.analysis.anchor {
        Some(p) if p.len() == dim => a[..dim].copy_from_slice(p),
        Some(p) => return Err(Error::InvalidConfig(format!("anchor has {} coordinates, domain has {dim}", p.len()))),
        None => a[dim - 1] = 0.5,
    }
    Ok(a)
}

fn pair_options(cfg: &ExperimentConfig) -> Result<PairOptions> {
    let mut opts = PairOptions::new(cfg.gamma, cfg.h()?);
    opts.coefficients = CoefficientField::from_spec(&cfg.coefficients)?;
    opts.solver = cfg.solver.options();
    Ok(opts)
}

fn solve_cfg_pair(cfg: &ExperimentConfig) -> Result<(ScalarField, ScalarField)> {
    solve_pair_with(cfg.require_domain()?, &pair_options(cfg)?)
}

fn field_bytes(f: &ScalarField) -> Result<(Vec<u8>, Vec<u8>)> {
    let mut csv = Vec::new();
    f.write_csv(&mut csv)?;
    let mut bin = Vec::new();
    f.write_binary(&mut bin)?;
    Ok((csv, bin))
}

fn alpha(cfg: &ExperimentConfig) -> Result<Outcome> {
    let spec = cfg.require_domain()?;
    let rep = match spec.kind() {
        DomainKind::Sector => sector_report(spec.aperture().expect("sector has an aperture"))?,
        DomainKind::Cone => alpha_axisymmetric(spec.dim(), spec.half_aperture(), 1)?,
        _ => return Err(Error::InvalidConfig("alpha needs a sector or cone domain".into())),
    };
    let verdict = threshold_verdict(rep.alpha1, cfg.gamma)?;
    let mut b = Builder::default();
    b.put("alpha1", rep.alpha1);
    b.put("lambda1", rep.lambda1);
    b.put("threshold", 2.0 - rep.alpha1 + cfg.gamma);
    b.put("verdict", verdict);
    b.file("f1.csv", rep.f1_csv());
    let plot = svg_line_plot(
        "first eigenfunction of the cross-section",
        "theta",
        "f1",
        &[PlotSeries::new("f1", rep.f1_samples.clone())],
        false,
        false,
    );
    b.file("f1.svg", plot);
    let report = json!({
        "experiment": "alpha",
        "homogeneity": rep,
        "gamma": cfg.gamma,
        "threshold": 2.0 - rep.alpha1 + cfg.gamma,
        "verdict": verdict,
    });
    Ok(b.finish(report))
}

fn pair(cfg: &ExperimentConfig) -> Result<Outcome> {
    let spec = cfg.require_domain()?;
    let (u, v) = solve_cfg_pair(cfg)?;
    let g = &*u.grid;
    let anchor = default_anchor(cfg, g.dim)?;
    let mut b = Builder::default();
    b.put("unknowns", g.num_unknowns());
    b.put("max_u", u.max_abs());
    b.put("max_v", v.max_abs());
    b.put("u_anchor", u.interpolate(&anchor));
    b.put("v_anchor", v.interpolate(&anchor));
    let mut report = json!({
        "experiment": "pair",
        "h": g.h,
        "unknowns": g.num_unknowns(),
        "anchor": anchor,
        "max_u": u.max_abs(),
        "max_v": v.max_abs(),
        "u_anchor": u.interpolate(&anchor),
        "v_anchor": v.interpolate(&anchor),
        "coefficients": opts_label(cfg)?,
    });
    if spec.kind() == DomainKind::Ball && cfg.coefficients == crate::elliptic::CoefficientSpec::Identity {
        // Δv = −|x|^γ with v = 1 on ∂B_R: v = 1 + (R^{γ+2} − |x|^{γ+2}) / ((γ+2)(γ+n))
        let (gm, n) = (cfg.gamma, g.dim as f64);
        let exact = 1.0 + spec.radius().powf(gm + 2.0) / ((gm + 2.0) * (gm + n));
        let err = (v.interpolate(&[0.0; 3]) - exact).abs();
        b.put("center_error", err);
        report["center_exact"] = json!(exact);
        report["center_error"] = json!(err);
    }
    for (name, f) in [("u", &u), ("v", &v)] {
        let (csv, bin) = field_bytes(f)?;
        b.file(&format!("{name}.csv"), csv);
        b.file(&format!("{name}.bin"), bin);
    }
    Ok(b.finish(report))
}

fn opts_label(cfg: &ExperimentConfig) -> Result<String> {
    Ok(CoefficientField::from_spec(&cfg.coefficients)?.label().to_string())
}

fn ratio(cfg: &ExperimentConfig) -> Result<Outcome> {
    let spec = cfg.require_domain()?;
    let (u, v) = solve_cfg_pair(cfg)?;
    let anchor = default_anchor(cfg, u.grid.dim)?;
    let prof = ratio_profile_with_margin(&u, &v, &anchor, cfg.analysis.levels, cfg.analysis.margin)?;
    let alpha1 = reference_alpha(spec)?;
    let rate = prof.log2_rate(spec.radius());
    let mut b = Builder::default();
    b.put("spread", prof.spread());
    b.put("log2_rate", rate);
    b.put("levels_kept", prof.radii.len());
    let mut report = json!({
        "experiment": "ratio",
        "profile": prof,
        "normalized": prof.normalized(),
        "spread": prof.spread(),
        "log2_rate": rate,
    });
    let mut csv = Vec::new();
    prof.write_csv(&mut csv, "ratio")?;
    b.file("ratio.csv", csv);
    let pts: Vec<(f64, f64)> = prof.radii.iter().cloned().zip(prof.normalized()).collect();
    b.file("ratio.svg", svg_line_plot("sup v/u over dyadic annuli", "r", "sup ratio / anchor", &[PlotSeries::new("ratio", pts)], true, true));
    if let Some(a1) = alpha1 {
        let verdict = threshold_verdict(a1, cfg.gamma)?;
        b.put("alpha1", a1);
        b.put("verdict", verdict);
        report["alpha1"] = json!(a1);
        report["verdict"] = json!(verdict);
        report["expected_rate"] = json!((a1 - 2.0 - cfg.gamma).max(0.0));
        let inc = dyadic_increments(&u, &v, &anchor, a1, cfg.analysis.levels + 4)?;
        let sums = inc.partial_sums();
        let plateau = inc.plateau(0.05);
        b.put("increments_plateau", plateau);
        let rows = inc.levels.iter().zip(&inc.a).zip(&sums).map(|((k, a), s)| vec![k.to_string(), num(*a), num(*s)]);
        b.file("increments.csv", table("ratio", Some(prof.h), "k,a,partial_sum", rows));
        report["increments"] = json!({ "levels": inc.levels, "a": inc.a, "partial_sums": sums, "plateau": plateau });
    }
    Ok(b.finish(report))
}

fn growth(cfg: &ExperimentConfig) -> Result<Outcome> {
    let spec = cfg.require_domain()?;
    let grid = Arc::new(rasterize(spec, cfg.h()?)?);
    let coeffs = CoefficientField::from_spec(&cfg.coefficients)?;
    let sys = assemble(grid, &coeffs, &RhsSpec::zero(), Dirichlet::lateral_outer(0.0, 1.0))?;
    let (u, stats) = solve_with(&sys, cfg.solver.options(), None)?;
    let fit = growth_exponent(&u, &[0.0; 3], cfg.analysis.levels)?;
    let alpha1 = reference_alpha(spec)?;
    let mut b = Builder::default();
    b.put("fitted_exponent", fit.fitted_exponent);
    b.put("fit_residual", fit.residual);
    b.put("reference_alpha", alpha1);
    b.put("exponent_error", alpha1.map(|a| (fit.fitted_exponent - a).abs()));
    let rows = fit.samples.iter().map(|(r, s)| vec![num(*r), num(*s)]);
    b.file("growth.csv", table("growth", Some(u.grid.h), "r,value", rows));
    b.file(
        "growth.svg",
        svg_line_plot("sup of u over B_r(0)", "r", "sup u", &[PlotSeries::new("u", fit.samples.clone())], true, true),
    );
    let report = json!({
        "experiment": "growth",
        "fit": fit,
        "reference_alpha": alpha1,
        "solver": { "iterations": stats.iterations, "relative_residual": stats.relative_residual, "method": stats.method },
    });
    Ok(b.finish(report))
}

fn default_radii(spec: &DomainSpec, h: f64) -> Vec<f64> {
    let top = 0.45 * spec.radius();
    (0..64).map(|k| top * 2f64.powf(-0.25 * k as f64)).take_while(|&r| r >= MIN_RADIUS_CELLS * h).collect()
}

fn weiss(cfg: &ExperimentConfig) -> Result<Outcome> {
    let spec = cfg.require_domain()?;
    if !spec.is_conical() {
        return Err(Error::InvalidConfig("weiss needs a sector or cone domain".into()));
    }
    let (_, v) = solve_cfg_pair(cfg)?;
    let radii = cfg.analysis.radii.clone().unwrap_or_else(|| default_radii(spec, v.grid.h));
    let trace = weiss_trace(&v, &radii)?;
    // W(ρr, v) = W(ρ, v_r) with v_r(x) = v(rx)/r²
    let r = 0.5;
    let vr = v.rescaled(r, 2.0)?;
    let mut defect = 0.0f64;
    let mut checked = 0usize;
    for &rho_r in &trace.radii {
        if let (Some(a), Some(c)) = (weiss_at(&v, rho_r)?, weiss_at(&vr, rho_r / r)?) {
            defect = defect.max((a - c).abs());
            checked += 1;
        }
    }
    let mut b = Builder::default();
    b.put("min_increment", trace.min_increment());
    b.put("nondecreasing", trace.is_nondecreasing(0.0));
    b.put("scaling_defect", defect);
    let mut csv = Vec::new();
    trace.write_csv(&mut csv, "weiss")?;
    b.file("weiss.csv", csv);
    let pts: Vec<(f64, f64)> = trace.radii.iter().cloned().zip(trace.w.iter().cloned()).collect();
    b.file("weiss.svg", svg_line_plot("Weiss energy", "r", "W(r, v)", &[PlotSeries::new("W", pts)], true, false));
    let report = json!({
        "experiment": "weiss",
        "trace": trace,
        "min_increment": trace.min_increment(),
        "scaling": { "r": r, "max_defect": defect, "radii_checked": checked },
    });
    Ok(b.finish(report))
}

fn fredholm(cfg: &ExperimentConfig) -> Result<Outcome> {
    let dims: Vec<usize> = match &cfg.domain {
        Some(d) => vec![d.dim()],
        None => vec![2, 3],
    };
    let reps = dims.iter().map(|&d| fredholm_residual(d)).collect::<Result<Vec<_>>>()?;
    let mut b = Builder::default();
    for r in &reps {
        b.put(&format!("residual_dim{}", r.dim), r.residual);
    }
    let rows = reps.iter().flat_map(|r| r.refinement.iter().map(move |(n, x)| vec![r.dim.to_string(), n.to_string(), num(*x)]));
    b.file("fredholm.csv", table("fredholm", None, "dim,nodes,residual", rows));
    Ok(b.finish(json!({ "experiment": "fredholm", "reports": reps })))
}

fn holder(cfg: &ExperimentConfig) -> Result<Outcome> {
    let (u, v) = solve_cfg_pair(cfg)?;
    let a = &cfg.analysis;
    let est = holder_quotient(&u, &v, a.beta, a.pair_budget, a.seed)?;
    let mut b = Builder::default();
    b.put("seminorm", est.seminorm);
    b.put("pairs_evaluated", est.pairs_evaluated);
    let h = u.grid.h;
    let rows = est.by_separation.iter().enumerate().map(|(c, q)| vec![num(h * 2f64.powi(c as i32)), num(*q)]);
    b.file("holder.csv", table("holder", Some(h), "separation,quotient", rows));
    Ok(b.finish(json!({ "experiment": "holder", "estimate": est })))
}

fn read_sequence(path: &std::path::Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let x: f64 = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{}: not a number: {tok:?}", path.display())))?;
            out.push(x);
        }
    }
    Ok(out)
}

fn sumdiv(cfg: &ExperimentConfig) -> Result<Outcome> {
    let sc = cfg.sumdiv.clone().unwrap_or_default();
    let (source, mut a) = match (&sc.file, sc.family) {
        (Some(p), _) => (json!({ "file": p }), read_sequence(p)?),
        (None, fam) => {
            let fam = fam.unwrap_or(SequenceFamily::Harmonic);
            (json!({ "family": fam }), fam.generate(sc.horizon))
        }
    };
    a.truncate(sc.horizon);
    let res = sumdiv_subsequence(&a, sc.j_max)?;
    let from = a.len() / 2;
    let tail: Vec<Option<f64>> = (1..=sc.j_max).map(|j| res.tail_sup(j, from)).collect();
    let mut b = Builder::default();
    b.put("case", res.case);
    b.put("selected", res.subsequence_indices.len());
    for (j, t) in tail.iter().enumerate() {
        b.put(&format!("tail_ratio_j{}", j + 1), t);
    }
    let rows = res
        .subsequence_indices
        .iter()
        .enumerate()
        .map(|(l, &k)| vec![(l + 1).to_string(), k.to_string(), num(a[k - 1])]);
    b.file("subsequence.csv", table("sumdiv", None, "l,k,a_k", rows));
    let header = std::iter::once("k".to_string()).chain((1..=sc.j_max).map(|j| format!("j{j}"))).collect::<Vec<_>>();
    let rows = res.subsequence_indices.iter().enumerate().map(|(l, &k)| {
        std::iter::once(k.to_string())
            .chain(res.ratio_table.iter().map(|col| col[l].map_or_else(String::new, num)))
            .collect::<Vec<_>>()
    });
    b.file("ratios.csv", table("sumdiv", None, &header.join(","), rows));
    let report = json!({
        "experiment": "sumdiv",
        "source": source,
        "horizon": a.len(),
        "j_max": sc.j_max,
        "case": res.case,
        "subsequence_indices": res.subsequence_indices,
        "envelope_knots": res.envelope_knots,
        "tail_from": from,
        "tail_ratio": tail,
    });
    Ok(b.finish(report))
}

fn heleshaw(cfg: &ExperimentConfig) -> Result<Outcome> {
    let hc = cfg
        .heleshaw
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("experiment heleshaw needs a heleshaw section".into()))?;
    let h = cfg.h()?;
    let t_max = hc.t_max.unwrap_or(1e3 * PI * (INITIAL_RADIUS_CELLS * h).powi(2));
    let (rep, last) = wets_corner_traced(&hc.table, &hc.corner, &hc.source, t_max, hc.steps, h, hc.refinement_steps)?;
    let mut b = Builder::default();
    b.put("wet", rep.wet);
    b.put("first_wet_t", rep.first_wet_t);
    b.put("volume_balance_error", rep.volume_balance_error);
    b.put("t_max", t_max);
    let rows = rep.t_schedule.iter().zip(&rep.corner_wet_fraction).map(|(t, f)| vec![num(*t), num(*f)]);
    b.file("wetting.csv", table("heleshaw", Some(h), "t,corner_wet_fraction", rows));
    let mut mask = Vec::new();
    last.write_mask_csv(&mut mask)?;
    b.file("mask.csv", mask);
    let pts: Vec<(f64, f64)> = rep.t_schedule.iter().cloned().zip(rep.corner_wet_fraction.iter().cloned()).collect();
    b.file("wetting.svg", svg_line_plot("corner wet fraction", "t", "fraction", &[PlotSeries::new("corner", pts)], true, false));
    let report = json!({
        "experiment": "heleshaw",
        "t_max": t_max,
        "wetting": rep,
        "final": { "t": last.t, "wet_area": last.wet_area(), "volume_balance_error": last.volume_balance_error() },
    });
    Ok(b.finish(report))
}

fn threshold_sweep(cfg: &ExperimentConfig) -> Result<Outcome> {
    let apertures = cfg
        .apertures
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("threshold-sweep needs apertures".into()))?;
    let cone_dim = match &cfg.domain {
        Some(d) if d.kind() == DomainKind::Cone => Some(d.dim()),
        Some(d) if d.kind() != DomainKind::Sector => {
            return Err(Error::InvalidConfig("threshold-sweep runs over sectors or cones".into()))
        }
        _ => None,
    };
    let mut rows = Vec::new();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for &w in apertures {
        let a1 = match cone_dim {
            Some(n) => alpha_axisymmetric(n, w, 1)?.alpha1,
            None => {
                make_sector(w)?;
                alpha_sector(w, 1)?
            }
        };
        let verdict = threshold_verdict(a1, cfg.gamma)?;
        let name = serde_json::to_value(verdict)?.as_str().unwrap_or_default().to_string();
        *counts.entry(name.clone()).or_default() += 1;
        rows.push((w, a1, 2.0 - a1 + cfg.gamma, name));
    }
    let mut b = Builder::default();
    for (k, c) in &counts {
        b.put(k, c);
    }
    let csv_rows = rows.iter().map(|(w, a, t, v)| vec![num(*w), num(*a), num(*t), v.clone()]);
    b.file("threshold.csv", table("threshold-sweep", None, "aperture,alpha1,threshold,verdict", csv_rows));
    let report = json!({
        "experiment": "threshold-sweep",
        "gamma": cfg.gamma,
        "dim": cone_dim.unwrap_or(2),
        "rows": rows.iter().map(|(w, a, t, v)| json!({ "aperture": w, "alpha1": a, "threshold": t, "verdict": v })).collect::<Vec<_>>(),
    });
    Ok(b.finish(report))
}
