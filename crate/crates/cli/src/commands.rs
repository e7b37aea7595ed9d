use std::fmt;
use std::fs;
use std::path::Path;

use bht_core::format::{self, Bundle, Item};
use bht_core::random::{random_element, seeded};
use bht_core::{
    abelianization, bisection_between, build_v_embedding, compress, compressibility_witness,
    distinct_conjugates, doubling_witness, evaluate_embedding, homology, image_vigor_check,
    is_perfect, multisection, proper_characters, vigor_witness, Clopen, CompressibilityArgs,
    CompressibilityWitness, Order, RationalPoint, SpaceSpec, TableElement, VigorCase,
    VigorWitness,
};

use crate::{verify, Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input (exit code 2).
    Input(String),
    /// An error raised by the library (exit code 1).
    Domain(bht_core::Error),
    /// A completed run whose report must still exit with code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Failed(out) => f.write_str(out),
        }
    }
}

impl From<bht_core::Error> for CliError {
    fn from(e: bht_core::Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, r: format::ParseResult<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> CliResult<TableElement> {
    parsed(path, format::parse_table(&read(path)?))
}

fn load_clopen(path: &Path) -> CliResult<Clopen> {
    parsed(path, format::parse_clopen(&read(path)?))
}

/// A point given inline, or the first content line of a file.
fn load_point(arg: &str, space: &SpaceSpec) -> CliResult<RationalPoint> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    format::parse_point(line, space).map_err(|e| CliError::Input(format!("point: {e}")))
}

/// `n,k,r` with `k` either one alphabet size or `k_1:k_2:...:k_n`.
pub fn parse_space(arg: &str) -> CliResult<SpaceSpec> {
    let bad = |m: &str| CliError::Input(format!("--space {arg:?}: {m}"));
    let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
    let [n, k, r] = parts[..] else {
        return Err(bad("expected n,k,r"));
    };
    let n: usize = n.parse().map_err(|_| bad("n is not a positive integer"))?;
    let r: u32 = r.parse().map_err(|_| bad("r is not a positive integer"))?;
    let mut ks = k
        .split(':')
        .map(|x| x.parse::<u32>().map_err(|_| bad("alphabet size is not an integer")))
        .collect::<CliResult<Vec<_>>>()?;
    if n == 0 {
        return Err(bad("n must be at least 1"));
    }
    if ks.len() == 1 {
        ks = vec![ks[0]; n];
    }
    if ks.len() != n {
        return Err(bad("number of alphabet sizes differs from n"));
    }
    SpaceSpec::new(ks, r).map_err(|e| bad(&e.to_string()))
}

fn same_space(spaces: &[&SpaceSpec]) -> CliResult<()> {
    for s in &spaces[1..] {
        spaces[0].ensure_same(s)?;
    }
    Ok(())
}

fn kv(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

fn push_vigor(bundle: &mut Bundle, prefix: &str, w: &VigorWitness) {
    let case = match w.case {
        VigorCase::Contained => "contained",
        VigorCase::Cycle => "cycle",
        VigorCase::TwoStep => "two-step",
    };
    bundle.push(format!("{prefix}case"), Item::Value(case.into()));
    bundle.push(format!("{prefix}gamma"), Item::Table(w.gamma.clone()));
    for (i, m) in w.factors.iter().enumerate() {
        bundle.push(format!("{prefix}factor{i}"), Item::Table(m.element.clone()));
    }
}

pub fn run(cli: &Cli) -> CliResult<String> {
    let porcelain = cli.porcelain;
    match &cli.command {
        Command::Compose { a, b } => {
            let (f, g) = (load_table(a)?, load_table(b)?);
            same_space(&[f.space(), g.space()])?;
            Ok(format::write_table(&f.compose(&g)?))
        }
        Command::Invert { a } => Ok(format::write_table(&load_table(a)?.invert())),
        Command::Eq { a, b } => {
            let (f, g) = (load_table(a)?, load_table(b)?);
            let eq = f.equals(&g)?;
            Ok(if porcelain { kv(&[("equal", eq.to_string())]) } else { format!("{eq}\n") })
        }
        Command::Order { a, max } => {
            if *max == 0 {
                return Err(CliError::Input("--max must be at least 1".into()));
            }
            let order = load_table(a)?.order(*max);
            Ok(match (porcelain, order) {
                (true, Order::Finite(m)) => kv(&[("order", m.to_string())]),
                (true, Order::ExceedsBound) => kv(&[("order", "exceeds".into()), ("bound", max.to_string())]),
                (false, o) => format!("{o}\n"),
            })
        }
        Command::Support { a } => Ok(format::write_clopen(&load_table(a)?.closed_support())),
        Command::Apply { a, point } => {
            let t = load_table(a)?;
            let p = load_point(point, t.space())?;
            let q = t.apply(&p)?;
            Ok(if porcelain {
                kv(&[("point", format::write_point(&q))])
            } else {
                format!("{}\n", format::write_point(&q))
            })
        }
        Command::Compress { a, b } => {
            let (x, y) = (load_clopen(a)?, load_clopen(b)?);
            same_space(&[x.space(), y.space()])?;
            let c = compress(&x, &y)?;
            let mut w = Bundle::new("compress");
            w.push("a", Item::Clopen(x)).push("b", Item::Clopen(y)).push("map", Item::Bisection(c));
            Ok(w.write())
        }
        Command::Double { x } => {
            let x = load_clopen(x)?;
            let (b, c) = doubling_witness(&x)?;
            let mut w = Bundle::new("doubling");
            w.push("x", Item::Clopen(x)).push("first", Item::Bisection(b)).push("second", Item::Bisection(c));
            Ok(w.write())
        }
        Command::Between { a, b } => {
            let (x, y) = (load_clopen(a)?, load_clopen(b)?);
            same_space(&[x.space(), y.space()])?;
            let c = bisection_between(&x, &y)?;
            let mut w = Bundle::new("between");
            w.push("a", Item::Clopen(x)).push("b", Item::Clopen(y)).push("map", Item::Bisection(c));
            Ok(w.write())
        }
        Command::Multisection { x0, x1, x2 } => {
            let xs = [load_clopen(x0)?, load_clopen(x1)?, load_clopen(x2)?];
            same_space(&[xs[0].space(), xs[1].space(), xs[2].space()])?;
            let m = multisection(&xs[0], &xs[1], &xs[2])?;
            let mut w = Bundle::new("multisection");
            for (i, x) in xs.into_iter().enumerate() {
                w.push(format!("x{i}"), Item::Clopen(x));
            }
            w.push("element", Item::Table(m.element));
            Ok(w.write())
        }
        Command::Vigor { x, y1, y2 } => {
            let (x, y1, y2) = (load_clopen(x)?, load_clopen(y1)?, load_clopen(y2)?);
            same_space(&[x.space(), y1.space(), y2.space()])?;
            let v = vigor_witness(&x, &y1, &y2)?;
            let mut w = Bundle::new("vigor");
            w.push("x", Item::Clopen(x)).push("y1", Item::Clopen(y1)).push("y2", Item::Clopen(y2));
            push_vigor(&mut w, "", &v);
            Ok(w.write())
        }
        Command::Conjugates { g, count } => {
            let g = load_table(g)?;
            let fam = distinct_conjugates(&g, *count)?;
            let mut w = Bundle::new("conjugates");
            w.push("g", Item::Table(g))
                .push("y1", Item::Clopen(fam.y1))
                .push("count", Item::Value(count.to_string()));
            for (m, c) in fam.members.iter().enumerate() {
                w.push(format!("m{m}.target"), Item::Clopen(c.target.clone()));
                w.push(format!("m{m}.conjugate"), Item::Table(c.conjugate.clone()));
                push_vigor(&mut w, &format!("m{m}.h."), &c.h);
            }
            Ok(w.write())
        }
        Command::Compressibility { point, cond, inputs } => compressibility(point, *cond, inputs),
        Command::EmbedV { space, support, v, trials, depth, seed } => {
            let space = parse_space(space)?;
            let x = load_clopen(support)?;
            same_space(&[&space, x.space()])?;
            let emb = build_v_embedding(&space, &x)?;
            let mut w = Bundle::new("embedding");
            w.push("x", Item::Clopen(x))
                .push("y", Item::Clopen(emb.y.clone()))
                .push("s0", Item::Bisection(emb.s0.clone()))
                .push("s1", Item::Bisection(emb.s1.clone()));
            if let Some(path) = v {
                let ve = parsed(path, format::parse_vpair(&read(path)?))?;
                let image = evaluate_embedding(&emb, &ve)?;
                w.push("v", Item::VPair(ve)).push("image", Item::Table(image));
            }
            if *trials > 0 {
                let report = image_vigor_check(&emb, *trials, *depth, &mut seeded(*seed));
                w.push("vigor.seed", Item::Value(seed.to_string()))
                    .push("vigor.successes", Item::Value(report.successes().to_string()))
                    .push("vigor.failures", Item::Value(report.failures().to_string()));
            }
            Ok(w.write())
        }
        Command::Homology { space, degree } => {
            let s = parse_space(space)?;
            let h = homology(&s, *degree);
            Ok(group_output(porcelain, &h))
        }
        Command::Abelianization { space } => {
            let s = parse_space(space)?;
            let a = abelianization(&s)?;
            Ok(group_output(porcelain, &a))
        }
        Command::Characters { space } => {
            let s = parse_space(space)?;
            let c = proper_characters(&s)?;
            if porcelain {
                let mut pairs = vec![("item", c.item.to_string()), ("count", c.count().to_string())];
                for f in &c.families {
                    pairs.push(("family", format!("{}x{}", f.count, f.order)));
                }
                pairs.push(("dual", c.dual.to_string()));
                Ok(kv(&pairs))
            } else {
                let mut out = format!("item ({})\n", c.item);
                if c.families.is_empty() {
                    out.push_str("no proper characters\n");
                }
                for f in &c.families {
                    let s = if f.count == 1 { "" } else { "s" };
                    out.push_str(&format!("{} proper character{s} of order {}\n", f.count, f.order));
                }
                out.push_str(&format!("dual group: {}\n", c.dual));
                Ok(out)
            }
        }
        Command::Perfect { space } => {
            let p = is_perfect(&parse_space(space)?);
            Ok(if porcelain { kv(&[("perfect", p.to_string())]) } else { format!("{p}\n") })
        }
        Command::Verify { witness } => {
            let bundle = parsed(witness, Bundle::parse(&read(witness)?))?;
            let report = verify::verify(&bundle)?;
            let out = report.render(porcelain);
            if report.all_ok() {
                Ok(out)
            } else {
                Err(CliError::Failed(out))
            }
        }
        Command::Random { space, factors, seed } => {
            let s = parse_space(space)?;
            Ok(format::write_table(&random_element(&s, &mut seeded(*seed), *factors)))
        }
    }
}

fn group_output(porcelain: bool, g: &bht_core::AbelianGroupDesc) -> String {
    if porcelain {
        let inv: Vec<String> = g.invariant_factors().iter().map(u64::to_string).collect();
        let order = g.order().map_or("infinite".to_string(), |o| o.to_string());
        kv(&[("group", g.to_string()), ("invariants", inv.join(",")), ("order", order)])
    } else {
        format!("{g}\n")
    }
}

fn compressibility(point: &str, cond: u8, inputs: &[std::path::PathBuf]) -> CliResult<String> {
    let expected = match cond {
        1 => 1,
        2 => 2,
        3 => 3,
        _ => return Err(CliError::Input("--cond must be 1, 2 or 3".into())),
    };
    if inputs.len() != expected {
        return Err(CliError::Input(format!("condition {cond} takes {expected} input file(s)")));
    }
    let mut w = Bundle::new("compressibility");
    w.push("cond", Item::Value(cond.to_string()));
    let args = if cond == 1 {
        let g = load_table(&inputs[0])?;
        w.push("g", Item::Table(g.clone()));
        CompressibilityArgs::Support(g)
    } else {
        let us = inputs.iter().map(|p| load_clopen(p)).collect::<CliResult<Vec<_>>>()?;
        let refs: Vec<&SpaceSpec> = us.iter().map(Clopen::space).collect();
        same_space(&refs)?;
        for (i, u) in us.iter().enumerate() {
            w.push(format!("u{}", i + 1), Item::Clopen(u.clone()));
        }
        if cond == 2 {
            CompressibilityArgs::Compress(us[0].clone(), us[1].clone())
        } else {
            CompressibilityArgs::Separate(us[0].clone(), us[1].clone(), us[2].clone())
        }
    };
    let space = match &args {
        CompressibilityArgs::Support(g) => g.space().clone(),
        CompressibilityArgs::Compress(u, _) | CompressibilityArgs::Separate(u, _, _) => u.space().clone(),
    };
    let x0 = load_point(point, &space)?;
    w.push("point", Item::Point(x0.clone()));
    match compressibility_witness(&x0, &args)? {
        CompressibilityWitness::Support { u, neighborhood } => {
            w.push("u", Item::Clopen(u)).push("neighborhood", Item::Clopen(neighborhood));
        }
        CompressibilityWitness::Compress { gamma, neighborhood }
        | CompressibilityWitness::Separate { gamma, neighborhood } => {
            w.push("neighborhood", Item::Clopen(neighborhood));
            push_vigor(&mut w, "", &gamma);
        }
    }
    Ok(w.write())
}
