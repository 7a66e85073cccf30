//! Checks selectable with `--check`, each a trait object in a registry.

use super::pipeline::Pipeline;
use super::report::{
    describe_as, describe_ext, describe_gldim, describe_koszul, BettiSection, ExtSection, HilbertSection,
    HochschildSection, Report,
};
use super::scan::normal_element_scan;
use super::CliError;
use crate::hilbert::{gk_estimate, verify_rational, RationalFunction};
use crate::presentation::ExpectedAs;
use crate::resolution::KoszulVerdict;

/// One unit of work in a run. Output goes to the report; `mismatches`
/// collects disagreements with a claim or with the expectations shipped
/// for a builtin algebra.
pub trait Check {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError>;
}

pub struct CheckContext<'a> {
    pub pipeline: &'a mut Pipeline,
    pub report: &'a mut Report,
    pub lines: &'a mut Vec<String>,
    pub claim: Option<&'a RationalFunction>,
    pub claim_text: Option<&'a str>,
    pub scan_degree: u32,
}

impl CheckContext<'_> {
    fn mismatch(&mut self, msg: String) {
        self.lines.push(format!("MISMATCH: {msg}"));
        self.report.mismatches.push(msg);
    }
}

/// Checks in the order they run.
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut r = CheckRegistry { checks: Vec::new() };
        r.register(Box::new(HilbertCheck));
        r.register(Box::new(BettiCheck));
        r.register(Box::new(KoszulCheck));
        r.register(Box::new(AsRegularCheck));
        r.register(Box::new(HochschildCheck));
        r.register(Box::new(RigidityCheck));
        r.register(Box::new(NormalElementsCheck));
        r
    }
}

impl CheckRegistry {
    /// Add a check; a later registration with the same name replaces it.
    pub fn register(&mut self, check: Box<dyn Check>) {
        match self.checks.iter().position(|c| c.name() == check.name()) {
            Some(i) => self.checks[i] = check,
            None => self.checks.push(check),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    /// Requested checks in registry order; unknown names are an error.
    pub fn select(&self, requested: &[String]) -> Result<Vec<&dyn Check>, CliError> {
        for r in requested {
            if self.get(r).is_none() {
                return Err(CliError::UnknownCheck { name: r.clone(), known: self.names().join(", ") });
            }
        }
        Ok(self.checks.iter().filter(|c| requested.iter().any(|r| r == c.name())).map(|c| c.as_ref()).collect())
    }
}

pub struct HilbertCheck;

impl Check for HilbertCheck {
    fn name(&self) -> &'static str {
        "hilbert"
    }

    fn description(&self) -> &'static str {
        "graded dimensions, rational claim, growth estimate"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let g = ctx.pipeline.hilbert()?.clone();
        let dims: Vec<String> = g.dims.iter().map(u64::to_string).collect();
        ctx.lines.push(format!("hilbert: {} (certified to degree {})", dims.join(" "), g.certified_to));

        let expected = ctx.pipeline.expectations.and_then(|e| e.hilbert);
        let (claim_text, claim) = match (ctx.claim_text, ctx.claim) {
            (Some(t), Some(c)) => (Some(t.to_string()), Some(c.clone())),
            _ => match expected {
                Some(t) => (Some(t.to_string()), Some(RationalFunction::parse(t).map_err(CliError::Claim)?)),
                None => (None, None),
            },
        };
        let claim_ok = match &claim {
            Some(c) => Some(verify_rational(&g, c).map_err(CliError::Claim)?),
            None => None,
        };
        if let (Some(t), Some(ok)) = (&claim_text, claim_ok) {
            ctx.lines.push(format!("hilbert claim {t}: {}", if ok { "ok" } else { "FAILED" }));
            if !ok {
                ctx.mismatch(format!("Hilbert series does not match {t} through degree {}", g.certified_to));
            }
        }
        let gk = gk_estimate(&g).ok();
        if let Some(est) = &gk {
            match est.estimate {
                Some(x) => ctx.lines.push(format!(
                    "gk estimate: {x:.2} (heuristic; log-log slope {:.2})",
                    est.loglog_slope
                )),
                None => ctx.lines.push("gk estimate: exponential growth (heuristic)".into()),
            }
        }
        ctx.report.hilbert =
            Some(HilbertSection { dims: g.dims.clone(), certified_to: g.certified_to, claim: claim_text, claim_ok, gk_estimate: gk });
        Ok(())
    }
}

fn fill_betti(ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
    let b = ctx.pipeline.betti()?.clone();
    let g = ctx.pipeline.gldim()?.clone();
    let koszul = ctx.pipeline.computed_koszul().cloned();
    ctx.report.betti = Some(BettiSection {
        entries: b.entries.clone(),
        certified_internal: b.certified_internal,
        certified_homological: b.certified_homological,
        gldim: g,
        koszul,
    });
    Ok(())
}

pub struct BettiCheck;

impl Check for BettiCheck {
    fn name(&self) -> &'static str {
        "betti"
    }

    fn description(&self) -> &'static str {
        "minimal resolution of k, Betti table, global dimension"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let b = ctx.pipeline.betti()?.clone();
        let g = ctx.pipeline.gldim()?.clone();
        ctx.lines.push("betti table (rows: j - i, columns: i):".into());
        ctx.lines.extend(b.grid().lines().map(str::to_string));
        ctx.lines.push(format!("gldim: {}", describe_gldim(&g)));
        if let (Some(want), Some(got)) = (ctx.pipeline.expectations.and_then(|e| e.gldim), g.exact()) {
            if want != got {
                ctx.mismatch(format!("global dimension {got}, expected {want}"));
            }
        }
        fill_betti(ctx)
    }
}

pub struct KoszulCheck;

impl Check for KoszulCheck {
    fn name(&self) -> &'static str {
        "koszul"
    }

    fn description(&self) -> &'static str {
        "diagonal Betti table and the numerical Koszul identity"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let k = ctx.pipeline.koszul()?.clone();
        ctx.lines.push(format!("koszul: {}", describe_koszul(&k)));
        let definite = match k {
            KoszulVerdict::Koszul { .. } => Some(true),
            KoszulVerdict::OffDiagonal { .. } | KoszulVerdict::IdentityFails { .. } => Some(false),
            KoszulVerdict::NotApplicable => None,
        };
        if let (Some(want), Some(got)) = (ctx.pipeline.expectations.and_then(|e| e.koszul), definite) {
            if want != got {
                ctx.mismatch(format!("Koszul verdict {got}, expected {want}"));
            }
        }
        fill_betti(ctx)
    }
}

pub struct AsRegularCheck;

impl Check for AsRegularCheck {
    fn name(&self) -> &'static str {
        "asregular"
    }

    fn description(&self) -> &'static str {
        "Ext(k, A) on both sides and the Artin-Schelter verdict"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let comp = ctx.pipeline.as_computation()?;
        let (left, right, verdict) = (comp.left.clone(), comp.right.clone(), comp.verdict.clone());
        ctx.lines.push(format!("ext_k_A left: {}", describe_ext(&left)));
        ctx.lines.push(format!("ext_k_A right: {}", describe_ext(&right)));
        ctx.lines.push(format!("as: {}", describe_as(&verdict)));
        match (ctx.pipeline.expectations.and_then(|e| e.as_status), &verdict) {
            (Some(ExpectedAs::Regular { n, l }), AsVerdict::Regular { n: n2, l: l2 }) if (n, l) != (*n2, *l2) => {
                ctx.mismatch(format!("AS regular ({n2}, {l2}), expected ({n}, {l})"))
            }
            (Some(ExpectedAs::Regular { n, l }), AsVerdict::Fails { .. }) => {
                ctx.mismatch(format!("AS check fails, expected regular ({n}, {l})"))
            }
            (Some(ExpectedAs::Fails), AsVerdict::Regular { .. } | AsVerdict::GorensteinConditionsHold { .. }) => {
                ctx.mismatch("AS conditions hold, expected failure".into())
            }
            _ => {}
        }
        fill_betti(ctx)?;
        ctx.report.ext_k_a = Some(ExtSection { left, right });
        ctx.report.as_verdict = Some(verdict);
        Ok(())
    }
}

use crate::duality::AsVerdict;

pub struct HochschildCheck;

impl Check for HochschildCheck {
    fn name(&self) -> &'static str {
        "hochschild"
    }

    fn description(&self) -> &'static str {
        "bimodule resolution of A and Ext over the enveloping algebra"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let one_sided = ctx.pipeline.betti()?.entries.clone();
        let t = ctx.pipeline.hochschild()?.clone();
        let bm = ctx.pipeline.bimodule()?.betti.entries.clone();
        let matches = bm == one_sided;
        ctx.lines.push(format!(
            "bimodule betti: {} ({})",
            bm.iter().map(|e| format!("b_{},{}={}", e.i, e.j, e.dim)).collect::<Vec<_>>().join(" "),
            if matches { "equal to one-sided" } else { "DIFFERS from one-sided" }
        ));
        if !matches {
            ctx.mismatch("bimodule Betti numbers differ from one-sided Betti numbers".into());
        }
        ctx.lines.push(format!("hochschild: {}", describe_ext(&t)));
        ctx.report.hochschild = Some(HochschildSection { bimodule_betti: bm, matches_one_sided: matches, table: t });
        Ok(())
    }
}

pub struct RigidityCheck;

impl Check for RigidityCheck {
    fn name(&self) -> &'static str {
        "rigidity"
    }

    fn description(&self) -> &'static str {
        "concentration of Hochschild Ext, graded match, twist on generators"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let v = ctx.pipeline.rigidity()?.clone();
        match (v.concentrated_at, v.shift) {
            (Some(n), Some(l)) => ctx.lines.push(format!(
                "rigidity: concentrated in degree {n}, shift {l}, graded match {} ({})",
                if v.graded_match { "yes" } else { "no" },
                v.note
            )),
            _ => ctx.lines.push(format!("rigidity: not concentrated ({})", v.note)),
        }
        if let Some(tw) = &v.twist_on_generators {
            let items: Vec<String> = tw.iter().map(|t| format!("{} -> {}", t.generator, t.image)).collect();
            let ok = v.twist_preserves_relations == Some(true);
            ctx.lines.push(format!(
                "twist: {} (relations {})",
                items.join(", "),
                if ok { "preserved" } else { "NOT preserved" }
            ));
        }
        if let Some(ExpectedAs::Regular { n, l }) = ctx.pipeline.expectations.and_then(|e| e.as_status) {
            let matched = v.concentrated_at == Some(n) && v.shift == Some(l) && v.graded_match;
            if !matched {
                ctx.mismatch(format!("Hochschild Ext not concentrated in degree {n} with shift {l}"));
            }
        }
        ctx.report.rigidity = Some(v);
        Ok(())
    }
}

pub struct NormalElementsCheck;

impl Check for NormalElementsCheck {
    fn name(&self) -> &'static str {
        "normal-elements"
    }

    fn description(&self) -> &'static str {
        "exhaustive normal-element search over a small prime field (heuristic)"
    }

    fn run(&self, ctx: &mut CheckContext<'_>) -> Result<(), CliError> {
        let d = ctx.scan_degree;
        let rs = ctx.pipeline.rewrite_system();
        let scan = normal_element_scan(rs, d)?;
        for sd in &scan.degrees {
            let examples = if sd.examples.is_empty() { String::new() } else { format!(": {}", sd.examples.join(", ")) };
            ctx.lines.push(format!(
                "normal elements in degree {}: {} of {} up to scalars{examples}",
                sd.degree, sd.normal_count, sd.tested
            ));
        }
        ctx.lines.push(format!("normal elements: {}", scan.note));
        ctx.report.normal_elements = Some(scan);
        Ok(())
    }
}
