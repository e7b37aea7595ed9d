//! Independent re-checking of witness bundles.
//!
//! Every check recomputes its postcondition from the stored objects alone.
//! Nothing here calls the constructors that produced the witness, except
//! `evaluate_embedding`, which is deterministic given the stored `Y`, `s0`
//! and `s1`.

use bht_core::format::{Bundle, Item};
use bht_core::{
    evaluate_embedding, Clopen, PrefixBijection, RationalPoint, TableElement, VElement, VEmbedding,
};

use crate::commands::{CliError, CliResult};

#[derive(Debug, Default)]
pub struct Report {
    pub checks: Vec<(String, bool)>,
}

impl Report {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    /// A check whose evaluation raised a library error counts as failed.
    fn check_with(&mut self, name: impl Into<String>, ok: bht_core::Result<bool>) {
        self.check(name, ok.unwrap_or(false));
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn render(&self, porcelain: bool) -> String {
        let mut out = String::new();
        for (name, ok) in &self.checks {
            if porcelain {
                out.push_str(&format!("{name}={}\n", if *ok { "ok" } else { "fail" }));
            } else {
                out.push_str(&format!("{} {name}\n", if *ok { "ok" } else { "FAIL" }));
            }
        }
        let failed = self.checks.iter().filter(|(_, ok)| !ok).count();
        if porcelain {
            out.push_str(&format!("verified={}\n", failed == 0));
        } else if failed == 0 {
            out.push_str(&format!("all {} checks passed\n", self.checks.len()));
        } else {
            out.push_str(&format!("{failed} of {} checks failed\n", self.checks.len()));
        }
        out
    }
}

struct Items<'a>(&'a Bundle);

impl Items<'_> {
    fn missing(&self, name: &str, what: &str) -> CliError {
        CliError::Input(format!("witness {}: missing {what} section @{name}", self.0.kind))
    }

    fn clopen(&self, name: &str) -> CliResult<Clopen> {
        match self.0.get(name) {
            Some(Item::Clopen(x)) => Ok(x.clone()),
            _ => Err(self.missing(name, "clopen")),
        }
    }

    fn bisection(&self, name: &str) -> CliResult<PrefixBijection> {
        match self.0.get(name) {
            Some(Item::Bisection(b)) => Ok(b.clone()),
            _ => Err(self.missing(name, "bisection")),
        }
    }

    fn table(&self, name: &str) -> CliResult<TableElement> {
        match self.0.get(name) {
            Some(Item::Table(t)) => Ok(t.clone()),
            _ => Err(self.missing(name, "table")),
        }
    }

    fn point(&self, name: &str) -> CliResult<RationalPoint> {
        match self.0.get(name) {
            Some(Item::Point(p)) => Ok(p.clone()),
            _ => Err(self.missing(name, "point")),
        }
    }

    fn vpair(&self, name: &str) -> Option<VElement> {
        match self.0.get(name) {
            Some(Item::VPair(v)) => Some(v.clone()),
            _ => None,
        }
    }

    fn value(&self, name: &str) -> CliResult<String> {
        match self.0.get(name) {
            Some(Item::Value(s)) => Ok(s.clone()),
            _ => Err(self.missing(name, "value")),
        }
    }

    /// `{prefix}factor0`, `{prefix}factor1`, ... in order.
    fn factors(&self, prefix: &str) -> Vec<TableElement> {
        (0..)
            .map_while(|i| match self.0.get(&format!("{prefix}factor{i}")) {
                Some(Item::Table(t)) => Some(t.clone()),
                _ => None,
            })
            .collect()
    }
}

pub fn verify(bundle: &Bundle) -> CliResult<Report> {
    let it = Items(bundle);
    let mut r = Report::default();
    match bundle.kind.as_str() {
        "compress" => {
            let (a, b, map) = (it.clopen("a")?, it.clopen("b")?, it.bisection("map")?);
            let range = map.range();
            r.check("source = A", map.source() == a);
            r.check_with("range ⊆ B", range.is_subset(&b));
            r.check("range ≠ B", range != b);
        }
        "between" => {
            let (a, b, map) = (it.clopen("a")?, it.clopen("b")?, it.bisection("map")?);
            r.check("source = A", map.source() == a);
            r.check("range = B", map.range() == b);
        }
        "doubling" => {
            let x = it.clopen("x")?;
            let (f, s) = (it.bisection("first")?, it.bisection("second")?);
            r.check("first source = X", f.source() == x);
            r.check("second source = X", s.source() == x);
            r.check_with("first range ⊆ X", f.range().is_subset(&x));
            r.check_with("second range ⊆ X", s.range().is_subset(&x));
            r.check_with("ranges disjoint", f.range().is_disjoint(&s.range()));
        }
        "multisection" => {
            let xs = [it.clopen("x0")?, it.clopen("x1")?, it.clopen("x2")?];
            let t = it.table("element")?;
            multisection_checks(&mut r, "", &t, &xs);
        }
        "vigor" => {
            let (x, y1, y2) = (it.clopen("x")?, it.clopen("y1")?, it.clopen("y2")?);
            let gamma = it.table("gamma")?;
            vigor_checks(&mut r, &it, "", &gamma, &x, &y1, &y2)?;
        }
        "conjugates" => conjugate_checks(&mut r, &it)?,
        "compressibility" => compressibility_checks(&mut r, &it)?,
        "embedding" => embedding_checks(&mut r, &it)?,
        other => return Err(CliError::Input(format!("unknown witness kind {other:?}"))),
    }
    Ok(r)
}

fn multisection_checks(r: &mut Report, prefix: &str, t: &TableElement, xs: &[Clopen; 3]) {
    r.check(format!("{prefix}order 3"), !t.is_identity() && t.pow(3).is_identity());
    for i in 0..3 {
        let j = (i + 1) % 3;
        r.check_with(format!("{prefix}X{i} ↦ X{j}"), t.image(&xs[i]).map(|im| im == xs[j]));
        r.check_with(format!("{prefix}X{i} ∩ X{j} = ∅"), xs[i].is_disjoint(&xs[j]));
    }
    let union = xs[0].union(&xs[1]).and_then(|u| u.union(&xs[2]));
    r.check_with(
        format!("{prefix}support ⊆ X0 ∪ X1 ∪ X2"),
        union.and_then(|u| t.closed_support().is_subset(&u)),
    );
}

/// Checks a vigor element stored under `prefix` and its factorization.
fn vigor_checks(
    r: &mut Report,
    it: &Items,
    prefix: &str,
    gamma: &TableElement,
    x: &Clopen,
    y1: &Clopen,
    y2: &Clopen,
) -> CliResult<()> {
    r.check_with(format!("{prefix}support ⊆ X"), gamma.closed_support().is_subset(x));
    r.check_with(
        format!("{prefix}gamma(Y1) ⊆ Y2"),
        gamma.image(y1).and_then(|im| im.is_subset(y2)),
    );
    let factors = it.factors(prefix);
    let case = it.value(&format!("{prefix}case"))?;
    let expected = match case.as_str() {
        "contained" => 0,
        "cycle" => 1,
        "two-step" => 2,
        other => return Err(CliError::Input(format!("unknown vigor case {other:?}"))),
    };
    r.check(format!("{prefix}{case} case has {expected} factor(s)"), factors.len() == expected);
    for (i, f) in factors.iter().enumerate() {
        r.check(format!("{prefix}factor{i} has order 3"), !f.is_identity() && f.pow(3).is_identity());
        r.check_with(format!("{prefix}factor{i} support ⊆ X"), f.closed_support().is_subset(x));
    }
    let product = factors
        .iter()
        .try_fold(TableElement::identity(gamma.space()), |acc, f| f.compose(&acc));
    r.check_with(
        format!("{prefix}gamma = product of factors"),
        product.and_then(|p| p.equals(gamma)),
    );
    Ok(())
}

fn conjugate_checks(r: &mut Report, it: &Items) -> CliResult<()> {
    let g = it.table("g")?;
    let y1 = it.clopen("y1")?;
    let count: usize = it
        .value("count")?
        .parse()
        .map_err(|_| CliError::Input("@count is not an integer".into()))?;
    let gy = g.image(&y1)?;
    r.check_with("g(Y1) ∩ Y1 = ∅", gy.is_disjoint(&y1));
    let x = y1.complement();
    let mut conjugates = Vec::with_capacity(count);
    let mut targets: Vec<Clopen> = Vec::with_capacity(count);
    for m in 0..count {
        let p = format!("m{m}.");
        let target = it.clopen(&format!("{p}target"))?;
        let conj = it.table(&format!("{p}conjugate"))?;
        let h = it.table(&format!("{p}h.gamma"))?;
        vigor_checks(r, it, &format!("{p}h."), &h, &x, &gy, &target)?;
        let expected = h.compose(&g).and_then(|hg| hg.compose(&h.invert()));
        r.check_with(format!("{p}conjugate = h g h⁻¹"), expected.and_then(|e| e.equals(&conj)));
        r.check_with(
            format!("{p}conjugate(Y1) ⊆ target"),
            conj.image(&y1).and_then(|im| im.is_subset(&target)),
        );
        for (j, t) in targets.iter().enumerate() {
            r.check_with(format!("targets {j} and {m} disjoint"), t.is_disjoint(&target));
        }
        targets.push(target);
        conjugates.push(conj);
    }
    let mut distinct = true;
    for i in 0..conjugates.len() {
        for j in i + 1..conjugates.len() {
            distinct &= !conjugates[i].equals(&conjugates[j]).unwrap_or(true);
        }
    }
    r.check(format!("{count} conjugates pairwise distinct"), distinct);
    Ok(())
}

fn compressibility_checks(r: &mut Report, it: &Items) -> CliResult<()> {
    let cond = it.value("cond")?;
    let x0 = it.point("point")?;
    let nb = it.clopen("neighborhood")?;
    r.check_with("x0 ∈ neighborhood", x0.in_clopen(&nb));
    match cond.as_str() {
        "1" => {
            let (g, u) = (it.table("g")?, it.clopen("u")?);
            r.check_with("support(g) ⊆ U", g.closed_support().is_subset(&u));
            r.check_with("x0 ∉ U", x0.in_clopen(&u).map(|b| !b));
            r.check_with("neighborhood ∩ U = ∅", nb.is_disjoint(&u));
        }
        "2" | "3" => {
            let (u1, u2) = (it.clopen("u1")?, it.clopen("u2")?);
            let gamma = it.table("gamma")?;
            let x = nb.complement();
            r.check_with("gamma fixes the neighborhood", gamma.closed_support().is_disjoint(&nb));
            if cond == "2" {
                vigor_checks(r, it, "", &gamma, &x, &u1, &u2)?;
            } else {
                let u3 = it.clopen("u3")?;
                r.check_with(
                    "gamma(U1) ∩ U3 = ∅",
                    gamma.image(&u1).and_then(|im| im.is_disjoint(&u3)),
                );
                r.check_with("support(gamma) ∩ U2 = ∅", gamma.closed_support().is_disjoint(&u2));
                let target = gamma.image(&u1)?;
                vigor_checks(r, it, "", &gamma, &x, &u1, &target)?;
            }
        }
        other => return Err(CliError::Input(format!("unknown condition {other:?}"))),
    }
    Ok(())
}

fn embedding_checks(r: &mut Report, it: &Items) -> CliResult<()> {
    let (x, y) = (it.clopen("x")?, it.clopen("y")?);
    let (s0, s1) = (it.bisection("s0")?, it.bisection("s1")?);
    r.check_with("X ⊆ Y", x.is_subset(&y));
    r.check("Y has class 0", y.h0_class() == 0);
    r.check("s0 source = Y", s0.source() == y);
    r.check("s1 source = Y", s1.source() == y);
    r.check_with("ranges disjoint", s0.range().is_disjoint(&s1.range()));
    r.check_with("ranges cover Y", s0.range().union(&s1.range()).map(|u| u == y));
    if let Some(v) = it.vpair("v") {
        let image = it.table("image")?;
        let emb = VEmbedding { space: y.space().clone(), y: y.clone(), s0, s1 };
        r.check_with("image support ⊆ Y", image.closed_support().is_subset(&y));
        r.check_with(
            "image = evaluation of v",
            evaluate_embedding(&emb, &v).and_then(|e| e.equals(&image)),
        );
        r.check("image trivial iff v trivial", image.is_identity() == v.is_identity());
    }
    if let Ok(failures) = it.value("vigor.failures") {
        r.check("image vigor trials all succeeded", failures == "0");
    }
    Ok(())
}
