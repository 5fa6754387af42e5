//! CSV tables with a header row. Floats use the shortest round-trip form, so
//! identical inputs give byte-identical output.

use crate::dynamics::ObservableSeries;
use crate::spectrum::{EpPoint, LiouvillianSpectrum};
use crate::trajectory::{LindbladResult, TrajectoryEnsemble};

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii csv")
}

/// Shortest round-trip text, in exponent form outside `[1e-5, 1e16)`.
fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// `re_lambda,im_lambda,multiplicity`
pub fn spectrum_csv(spec: &LiouvillianSpectrum) -> String {
    let mut w = writer();
    w.write_record(["re_lambda", "im_lambda", "multiplicity"]).unwrap();
    for e in &spec.entries {
        w.write_record([num(e.lambda.re), num(e.lambda.im), e.multiplicity.to_string()])
            .unwrap();
    }
    finish(w)
}

/// One row per defective grid point. `block_sizes` lists the Jordan blocks of
/// each eigenvalue cluster, e.g. `[[2],[2]]`.
pub fn ep_scan_csv(points: &[EpPoint]) -> String {
    let mut w = writer();
    w.write_record([
        "gg",
        "gl",
        "g",
        "gamma",
        "omega",
        "re_beta",
        "im_beta",
        "block_sizes",
        "low_confidence",
    ])
    .unwrap();
    for p in points {
        let blocks: Vec<&Vec<usize>> = p.jordan.entries.iter().map(|e| &e.block_sizes).collect();
        let join = |f: fn(&crate::numerics::JordanEntry) -> f64| {
            p.jordan.entries.iter().map(|e| num(f(e))).collect::<Vec<_>>().join(";")
        };
        w.write_record([
            opt(p.params.gg),
            opt(p.params.gl),
            opt(p.params.g),
            opt(p.params.gamma),
            opt(p.params.omega),
            join(|e| e.eigenvalue.re),
            join(|e| e.eigenvalue.im),
            serde_json::to_string(&blocks).unwrap(),
            p.jordan.low_confidence.to_string(),
        ])
        .unwrap();
    }
    finish(w)
}

/// Long format `observable,t,re,im`.
pub fn observables_csv(series: &ObservableSeries) -> String {
    let mut w = writer();
    w.write_record(["observable", "t", "re", "im"]).unwrap();
    for (name, vals) in series.names.iter().zip(&series.values) {
        for (t, v) in series.times.iter().zip(vals) {
            w.write_record([name.clone(), num(*t), num(v.re), num(v.im)])
                .unwrap();
        }
    }
    finish(w)
}

/// Per-trajectory records `t,trajectory_id,observable,value`.
pub fn trajectories_csv(ens: &TrajectoryEnsemble) -> String {
    let mut w = writer();
    w.write_record(["t", "trajectory_id", "observable", "value"]).unwrap();
    for (id, tr) in ens.streams.iter().zip(&ens.trajectories) {
        for (name, vals) in ens.names.iter().zip(tr) {
            for (t, v) in ens.times.iter().zip(vals) {
                w.write_record([num(*t), id.to_string(), name.clone(), num(*v)])
                    .unwrap();
            }
        }
    }
    finish(w)
}

/// Ensemble statistics `t,observable,mean,sem`, plus a `lindblad` column when
/// a master-equation run on the same grid is supplied.
pub fn ensemble_csv(ens: &TrajectoryEnsemble, lindblad: Option<&LindbladResult>) -> String {
    let mut w = writer();
    let mut header = vec!["t", "observable", "mean", "sem"];
    if lindblad.is_some() {
        header.push("lindblad");
    }
    w.write_record(&header).unwrap();
    for (o, name) in ens.names.iter().enumerate() {
        for (k, t) in ens.times.iter().enumerate() {
            let mut rec = vec![
                num(*t),
                name.clone(),
                num(ens.mean[o][k]),
                num(ens.sem[o][k]),
            ];
            if let Some(l) = lindblad {
                let col = if name == "sz_a" { &l.sz_a } else { &l.sz_b };
                rec.push(col.get(k).map(|v| num(*v)).unwrap_or_default());
            }
            w.write_record(&rec).unwrap();
        }
    }
    finish(w)
}

/// Master-equation series `t,sz_a,sz_b,purity,trace`.
pub fn lindblad_csv(r: &LindbladResult) -> String {
    let mut w = writer();
    w.write_record(["t", "sz_a", "sz_b", "purity", "trace"]).unwrap();
    for k in 0..r.times.len() {
        w.write_record([
            num(r.times[k]),
            num(r.sz_a[k]),
            num(r.sz_b[k]),
            num(r.purity[k]),
            num(r.trace[k]),
        ])
        .unwrap();
    }
    finish(w)
}
