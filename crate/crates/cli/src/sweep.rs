use crate::output::{num, Table};
use crate::{Failure, Global};
use clap::{Args, ValueEnum};
use isoperim::counterex::{rect_ratio, vanishing_sequence};
use isoperim::functional::*;
use isoperim::geometry::{crad, WeightParams};
use isoperim::regions::{breaking_threshold, classify, l1_threshold};
use isoperim::spectral::*;
use isoperim::Error;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    Classify,
    Crad,
    L1,
    LBreak,
    Stability,
    HardyConstant,
    HardyWitnessRatio,
    WirtingerMinEig,
    PoincareMinEig,
    HalflineStabilityMargin,
    Srad,
    CknA1,
    CknA2,
    VanishingRatio,
}

impl Quantity {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn needs(self) -> &'static [&'static str] {
        use Quantity::*;
        match self {
            Classify | Crad | Stability => &["k", "l", "N", "alpha"],
            L1 | LBreak => &["k", "N", "alpha"],
            HardyConstant => &["p", "k", "alpha", "N"],
            HardyWitnessRatio => &["eps", "p", "k", "alpha", "N"],
            WirtingerMinEig | HalflineStabilityMargin => &["alpha"],
            PoincareMinEig => &["N", "alpha"],
            Srad => &["a", "p", "q", "N", "alpha"],
            CknA1 | CknA2 => &["p", "q", "N", "alpha"],
            VanishingRatio => &["alpha", "eps"],
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub quantity: Quantity,
    /// NAME=MIN:MAX:STEPS or NAME=MIN:MAX:STEPS:log; given once or twice.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub vary: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<f64>,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
    spec: String,
}

pub fn parse_axis(s: &str) -> Result<Axis, Failure> {
    let bad = || Failure::usage(format!("malformed --vary '{s}': expected NAME=MIN:MAX:STEPS[:log]"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let steps: usize = parts[2].parse().map_err(|_| bad())?;
    let log = match parts.get(3) {
        None => false,
        Some(&"log") => true,
        Some(_) => return Err(bad()),
    };
    if !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    if steps < 2 {
        return Err(Failure::usage("a sweep axis needs at least 2 steps"));
    }
    if log && !(lo > 0.0 && hi > 0.0) {
        return Err(Failure::usage("a log-spaced axis needs positive bounds"));
    }
    let values = (0..steps)
        .map(|i| {
            let t = i as f64 / (steps - 1) as f64;
            if log {
                (lo.ln() + t * (hi.ln() - lo.ln())).exp()
            } else {
                lo + t * (hi - lo)
            }
        })
        .collect();
    Ok(Axis { name: name.to_string(), values, spec: s.to_string() })
}

enum Cell {
    Num(f64),
    Text(String),
}

fn dim(x: f64) -> Result<usize, Error> {
    if x >= 2.0 && x.fract() == 0.0 && x < 1e6 {
        Ok(x as usize)
    } else {
        Err(Error::Domain("N must be an integer >= 2".into()))
    }
}

fn evaluate(q: Quantity, v: &BTreeMap<&str, f64>, grid: usize) -> Result<Cell, Error> {
    use Quantity::*;
    let g = |s: &str| v[s];
    let quad = || WeightParams::new(g("k"), g("l"), dim(g("N"))?, g("alpha"));
    let ckn = || CknParams::new(g("a"), g("p"), g("q"), dim(g("N"))?, g("alpha"));
    Ok(match q {
        Classify => Cell::Text(classify(&quad()?)?.label.name()),
        Crad => {
            let p = quad()?;
            p.check_admissible()?;
            Cell::Num(crad(&p)?)
        }
        L1 => Cell::Num(l1_threshold(g("k"), dim(g("N"))?, g("alpha"))?),
        LBreak => Cell::Num(breaking_threshold(g("k"), dim(g("N"))?, g("alpha"))?),
        Stability => Cell::Num(stability_verdict_with_grid(&quad()?, grid)?.relative_gap),
        HardyConstant => Cell::Num(hardy_constant(g("p"), g("k"), g("alpha"), dim(g("N"))?)?),
        HardyWitnessRatio => Cell::Num(hardy_witness_ratio(g("eps"), g("p"), g("k"), g("alpha"), dim(g("N"))?)?),
        WirtingerMinEig => Cell::Num(wirtinger_min_eig(g("alpha"), grid)?.min_eigenvalue),
        PoincareMinEig => Cell::Num(poincare_min_eig(dim(g("N"))?, g("alpha"), grid)?.min_eigenvalue),
        HalflineStabilityMargin => Cell::Num(halfline_stability_margin(g("alpha"), grid)?),
        Srad => Cell::Num(srad(&ckn()?)?),
        CknA1 => Cell::Num(ckn_thresholds(g("p"), g("q"), dim(g("N"))?, g("alpha"))?.0),
        CknA2 => Cell::Num(ckn_thresholds(g("p"), g("q"), dim(g("N"))?, g("alpha"))?.1),
        VanishingRatio => Cell::Num(rect_ratio(&vanishing_sequence(g("alpha"), g("eps"))?)),
    })
}

pub fn run(args: &SweepArgs, glob: &Global) -> Result<Table, Failure> {
    let axes = args.vary.iter().map(|s| parse_axis(s)).collect::<Result<Vec<_>, _>>()?;
    if axes.len() > 2 {
        return Err(Failure::usage("at most two parameters can vary"));
    }
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(Failure::usage("the two varying parameters must differ"));
    }
    let needs = args.quantity.needs();
    let fixed_all = [
        ("k", args.k),
        ("l", args.l),
        ("N", args.n.map(|n| n as f64)),
        ("alpha", args.alpha),
        ("p", args.p),
        ("q", args.q),
        ("a", args.a),
        ("eps", args.eps),
    ];
    let mut fixed = BTreeMap::new();
    for name in needs {
        if axes.iter().any(|a| a.name == *name) {
            continue;
        }
        match fixed_all.iter().find(|(n, _)| n == name).and_then(|(_, v)| *v) {
            Some(v) if v.is_finite() => {
                fixed.insert(*name, v);
            }
            _ => return Err(Failure::usage(format!("{} needs --{name} or --vary {name}=...", args.quantity.name()))),
        }
    }
    for ax in &axes {
        if !needs.contains(&ax.name.as_str()) {
            return Err(Failure::usage(format!("{} does not depend on '{}'", args.quantity.name(), ax.name)));
        }
    }
    let grid = glob.grid.unwrap_or(DEFAULT_GRID);
    let points: Vec<Vec<f64>> = match axes.as_slice() {
        [a] => a.values.iter().map(|&x| vec![x]).collect(),
        [a, b] => a.values.iter().flat_map(|&x| b.values.iter().map(move |&y| vec![x, y])).collect(),
        _ => unreachable!(),
    };
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|pt| {
            let mut vals = fixed.clone();
            for (ax, &x) in axes.iter().zip(pt) {
                let key = needs.iter().find(|n| **n == ax.name).expect("checked above");
                vals.insert(*key, x);
            }
            let mut row: Vec<String> = pt.iter().map(|&x| num(x)).collect();
            match evaluate(args.quantity, &vals, grid) {
                Ok(Cell::Num(x)) => row.extend([num(x), "ok".into()]),
                Ok(Cell::Text(s)) => row.extend([s, "ok".into()]),
                Err(Error::NonConvergence(_)) => row.extend([String::new(), "nonconvergence".into()]),
                Err(_) => row.extend([String::new(), "domain_error".into()]),
            }
            row
        })
        .collect();
    let mut header: Vec<String> = axes.iter().map(|a| a.name.clone()).collect();
    header.extend([args.quantity.name(), "status".into()]);
    let fixed_json: Map<String, Value> = fixed.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let inputs = json!({
        "quantity": args.quantity.name(),
        "vary": axes.iter().map(|a| a.spec.clone()).collect::<Vec<_>>(),
        "fixed": fixed_json,
    });
    let status = if rows.iter().all(|r| r.last().map(String::as_str) == Some("ok")) { "ok" } else { "partial" };
    Ok(Table { inputs, header, rows, status: status.into() })
}
