//! Named verification suites over a configured box.

use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::config::{enumerate_box, BoxBounds, Config};
use super::laws;
use super::parse::{parse_element, print_element};
use super::report::{Failure, VerificationReport};
use crate::algebra::{Algebra, BracketTable, Element, GammaElement, Monomial, Signature};
use crate::cocycle::{
    check_antisymmetry, check_binomial_identity, check_cocycle_identity_exhaustive, normalize, BilinearForm,
    Coboundary, LinearFunctional, Phi0, PhiGamma, SharedForm, Sum,
};
use crate::error::{Error, Result};
use crate::extension::{check_ext_jacobi_exhaustive, virasoro_table};
use crate::linalg::triviality_test;
use crate::numerics::{falling_factorial, format_rational, int, rat, Rational};

pub const SUITES: [&str; 13] = [
    "assoc",
    "jacobi",
    "witt-compat",
    "cocycle-phi0",
    "cocycle-phi-gamma",
    "normalize-postconditions",
    "lemma22-vanish",
    "case1-equivalence",
    "binomial-330",
    "extension-jacobi",
    "virasoro-regression",
    "triviality-phi0",
    "parser-roundtrip",
];

/// Knobs shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Sample this many random tuples instead of enumerating the box.
    pub samples: Option<usize>,
    /// Restrict the box to the monomials of these expressions.
    pub cases: Vec<String>,
    /// How the configuration is named in reproduction commands.
    pub config_label: String,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            samples: None,
            cases: Vec::new(),
            config_label: "<config>".to_string(),
        }
    }
}

/// Runs suite `name` and stamps the report with the configuration echo,
/// the seed where randomness is involved, and reproduction commands.
pub fn run_suite(name: &str, config: &Config, opts: &SuiteOptions) -> Result<VerificationReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let start = Instant::now();
    let ctx = Ctx::new(config, opts)?;
    let mut report = match name {
        "assoc" => ctx.assoc()?,
        "jacobi" => ctx.jacobi()?,
        "witt-compat" => ctx.witt()?,
        "cocycle-phi0" => ctx.cocycle_phi0()?,
        "cocycle-phi-gamma" => ctx.cocycle_phi_gamma()?,
        "normalize-postconditions" => ctx.normalize_postconditions()?,
        "lemma22-vanish" => ctx.lemma22()?,
        "case1-equivalence" => ctx.case1()?,
        "binomial-330" => binomial_330(6),
        "extension-jacobi" => ctx.extension_jacobi()?,
        "virasoro-regression" => ctx.virasoro()?,
        "triviality-phi0" => ctx.triviality_phi0()?,
        "parser-roundtrip" => ctx.parser_roundtrip()?,
        _ => unreachable!("suite list checked above"),
    };
    report.suite = name.to_string();
    report.config = config.echo();
    if ctx.randomized(name) {
        report.seed = Some(opts.seed);
    }
    for f in &mut report.failures {
        f.repro = Some(repro_line(name, opts, f));
    }
    report.failures.sort();
    report.wall_time = Some(start.elapsed());
    Ok(report)
}

fn repro_line(name: &str, opts: &SuiteOptions, f: &Failure) -> String {
    let mut cmd = format!("weylk verify --config {} --suite {name}", opts.config_label);
    if opts.seed != 0 {
        cmd.push_str(&format!(" --seed {}", opts.seed));
    }
    let cases: Vec<&String> = f.inputs.iter().filter(|s| s.starts_with("m[") || s.contains("*m[")).collect();
    if cases.is_empty() {
        if let Some(n) = opts.samples {
            cmd.push_str(&format!(" --samples {n}"));
        }
    }
    for c in cases {
        cmd.push_str(&format!(" --case \"{c}\""));
    }
    cmd
}

struct Ctx<'a> {
    config: &'a Config,
    alg: &'a Algebra,
    opts: &'a SuiteOptions,
    domain: Vec<Monomial>,
}

impl<'a> Ctx<'a> {
    fn new(config: &'a Config, opts: &'a SuiteOptions) -> Result<Self> {
        let alg = &config.algebra;
        let domain = if opts.cases.is_empty() {
            config.enumerate_box()
        } else {
            let mut ms = Vec::new();
            for c in &opts.cases {
                ms.extend(parse_element(c, alg)?.monomials().cloned());
            }
            ms.sort();
            ms.dedup();
            ms
        };
        Ok(Ctx {
            config,
            alg,
            opts,
            domain,
        })
    }

    fn randomized(&self, name: &str) -> bool {
        matches!(name, "lemma22-vanish" | "case1-equivalence" | "parser-roundtrip")
            || (self.opts.samples.is_some()
                && self.opts.cases.is_empty()
                && matches!(name, "assoc" | "jacobi" | "witt-compat"))
            || (name == "normalize-postconditions" && self.config.file.cocycle.is_none())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed)
    }

    fn require(&self, suite: &'static str, counts: [usize; 4]) -> Result<()> {
        let expected = Signature::new(counts[0], counts[1], counts[2], counts[3])?;
        if self.alg.signature() != expected {
            return Err(Error::WrongSignature {
                what: suite,
                expected,
                found: self.alg.signature(),
            });
        }
        Ok(())
    }

    fn sampled(&self) -> Option<usize> {
        self.opts.samples.filter(|_| self.opts.cases.is_empty())
    }

    fn sample_triples(&self, n: usize) -> Vec<(Element, Element, Element)> {
        let mut rng = self.rng();
        let pick = |rng: &mut ChaCha8Rng| Element::monomial(self.domain.choose(rng).expect("nonempty box").clone());
        (0..n).map(|_| (pick(&mut rng), pick(&mut rng), pick(&mut rng))).collect()
    }

    fn assoc(&self) -> Result<VerificationReport> {
        match self.sampled() {
            Some(n) => laws::check_associativity_on_triples(self.alg, &self.sample_triples(n)),
            None => Ok(laws::check_associativity_exhaustive(self.alg, &self.domain)),
        }
    }

    fn jacobi(&self) -> Result<VerificationReport> {
        match self.sampled() {
            Some(n) => laws::check_jacobi_on_triples(self.alg, &self.sample_triples(n)),
            None => Ok(laws::check_jacobi_exhaustive(self.alg, &self.domain)),
        }
    }

    fn witt(&self) -> Result<VerificationReport> {
        let funcs: Vec<&Monomial> = self.domain.iter().filter(|m| m.is_function()).collect();
        if funcs.is_empty() {
            return Ok(VerificationReport::new("witt-compat"));
        }
        let pairs: Vec<(Element, Element)> = match self.sampled() {
            Some(n) => {
                let mut rng = self.rng();
                let mut pick = || {
                    let terms = rng.gen_range(1..=2);
                    (0..terms)
                        .map(|_| (int(rng.gen_range(1..=3)), (*funcs.choose(&mut rng).expect("nonempty")).clone()))
                        .collect::<Element>()
                };
                (0..n).map(|_| (pick(), pick())).collect()
            }
            None => funcs
                .iter()
                .flat_map(|u| funcs.iter().map(move |v| (Element::monomial((*u).clone()), Element::monomial((*v).clone()))))
                .collect(),
        };
        laws::check_witt_compat(self.alg, &pairs)
    }

    fn form_checks(&self, form: &dyn BilinearForm, table: &BracketTable, tag: Option<&str>) -> VerificationReport {
        let pairs: Vec<(Monomial, Monomial)> = self
            .domain
            .iter()
            .flat_map(|u| self.domain.iter().map(move |v| (u.clone(), v.clone())))
            .collect();
        let mut report = check_antisymmetry(form, &pairs);
        report.absorb(check_cocycle_identity_exhaustive(table, form));
        if let Some(tag) = tag {
            for f in &mut report.failures {
                f.expected = format!("{} ({tag})", f.expected);
            }
        }
        report
    }

    fn cocycle_phi0(&self) -> Result<VerificationReport> {
        let form = Phi0::new(self.alg)?;
        let table = BracketTable::new(self.alg, &self.domain);
        Ok(self.form_checks(&form, &table, None))
    }

    fn gamma_set(&self) -> Result<Vec<GammaElement>> {
        if let Some(spec) = &self.config.file.cocycle {
            let gs = spec.gammas(self.alg)?;
            if !gs.is_empty() {
                return Ok(gs);
            }
        }
        let g = self.config.bounds.gamma_coeff_bound;
        let unit = BoxBounds::new(g, 0, 0);
        Ok(enumerate_box(&unit, self.alg).into_iter().map(|m| m.alpha).collect())
    }

    fn cocycle_phi_gamma(&self) -> Result<VerificationReport> {
        self.require("cocycle-phi-gamma", [0, 0, 1, 0])?;
        let table = BracketTable::new(self.alg, &self.domain);
        let mut report = VerificationReport::new("cocycle-phi-gamma");
        let gammas = self.gamma_set()?;
        for g in &gammas {
            let form = PhiGamma::new(self.alg, g.clone())?;
            report.absorb(self.form_checks(&form, &table, Some(&format!("gamma={g}"))));
        }
        report.details = json!({ "gammas": gammas.iter().map(|g| g.to_string()).collect::<Vec<_>>() });
        Ok(report)
    }

    fn tau(&self) -> Result<GammaElement> {
        self.config
            .tau
            .clone()
            .ok_or_else(|| Error::Config("this suite needs tau".into()))
    }

    /// The configured cocycle, or a default for the signature.
    fn configured_form(&self) -> Result<SharedForm> {
        if let Some(spec) = &self.config.file.cocycle {
            return spec.build(self.alg);
        }
        let sig = self.alg.signature().counts();
        Ok(match sig {
            [0, 0, 0, 1] => Arc::new(Phi0::new(self.alg)?),
            [0, 0, 1, 0] => Arc::new(PhiGamma::new(self.alg, self.alg.lattice().zero())?),
            _ => Arc::new(random_coboundary(self.alg, &self.domain, self.opts.seed)),
        })
    }

    fn normalize_postconditions(&self) -> Result<VerificationReport> {
        let psi = self.configured_form()?;
        let n = normalize(self.alg, psi, self.tau()?)?;
        Ok(n.check_postconditions(&self.domain))
    }

    fn lemma22(&self) -> Result<VerificationReport> {
        let sig = self.alg.signature();
        if sig.prefix(2) == 0 {
            return Err(Error::Config(format!(
                "lemma22-vanish needs l1 + l2 >= 1, found signature {sig}"
            )));
        }
        let psi: SharedForm = Arc::new(random_coboundary(self.alg, &self.domain, self.opts.seed));
        let n = normalize(self.alg, psi, self.tau()?)?;
        let mut report = n.check_postconditions(&self.domain);
        for u in &self.domain {
            for v in &self.domain {
                let x = n.eval(u, v);
                report.record(x.is_zero(), || Failure::new(vec![u.to_string(), v.to_string()], "0", format_rational(&x)));
            }
        }
        Ok(report)
    }

    fn case1(&self) -> Result<VerificationReport> {
        self.require("case1-equivalence", [0, 0, 0, 1])?;
        let tau = self.tau()?;
        if !tau.coord(0).is_one() {
            return Err(Error::Config("case1-equivalence needs tau = 1 in ambient coordinates".into()));
        }
        let phi0: SharedForm = Arc::new(Phi0::new(self.alg)?);
        let psi: SharedForm = match &self.config.file.cocycle {
            Some(spec) => spec.build(self.alg)?,
            None => Arc::new(
                Sum::new()
                    .with(Rational::one(), phi0.clone())
                    .with(Rational::one(), Arc::new(random_coboundary(self.alg, &self.domain, self.opts.seed))),
            ),
        };
        let n = normalize(self.alg, psi, tau.clone())?;
        let mut report = n.check_postconditions(&self.domain);
        let x1 = self.alg.x_power(tau.clone());
        let xm1 = self.alg.x_power(tau.neg());
        let c = n.eval(&x1, &xm1);
        for u in &self.domain {
            for v in &self.domain {
                let got = n.eval(u, v);
                let want = phi0.eval(u, v) * &c;
                report.record(got == want, || {
                    Failure::new(vec![u.to_string(), v.to_string()], format_rational(&want), format_rational(&got))
                });
            }
        }
        report.details = json!({ "c": format_rational(&c) });
        Ok(report)
    }

    fn extension_jacobi(&self) -> Result<VerificationReport> {
        self.require("extension-jacobi", [0, 0, 1, 0])?;
        let form: SharedForm = match &self.config.file.cocycle {
            Some(spec) => spec.build(self.alg)?,
            None => Arc::new(PhiGamma::new(self.alg, self.alg.lattice().zero())?),
        };
        let table = BracketTable::new(self.alg, &self.domain);
        Ok(check_ext_jacobi_exhaustive(self.alg, &form, &table))
    }

    fn virasoro(&self) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("virasoro-regression");
        let oracle = |m: i64| -falling_factorial(&int(m + 1), 3) / int(6);
        match self.alg.signature().counts() {
            [0, 0, 0, 1] => {
                let phi0 = Phi0::new(self.alg)?;
                for a in -6..=6i64 {
                    let Ok(alpha) = self.alg.lattice().from_ambient(&[int(a)]) else {
                        continue;
                    };
                    let u = self.alg.x_power(alpha.clone()).with_mu(self.alg.partial(0).mu);
                    let v = self.alg.x_power(alpha.neg()).with_mu(self.alg.partial(0).mu);
                    let got = phi0.eval(&u, &v);
                    let want = oracle(a);
                    report.record(got == want, || {
                        Failure::new(vec![u.to_string(), v.to_string()], format_rational(&want), format_rational(&got))
                    });
                }
            }
            [0, 0, 1, 0] => {
                for row in virasoro_table(self.alg, 6)? {
                    let want = if row.m + row.n == 0 { oracle(row.m) } else { Rational::zero() };
                    let body = int(row.n - row.m);
                    report.record(row.central == want && row.body == body, || {
                        Failure::new(
                            vec![format!("L_{}", row.m), format!("L_{}", row.n)],
                            format!("{} | {}", format_rational(&body), format_rational(&want)),
                            format!("{} | {}", format_rational(&row.body), format_rational(&row.central)),
                        )
                    });
                }
            }
            _ => {
                return Err(Error::Config(
                    "virasoro-regression needs signature (0,0,0,1) or (0,0,1,0)".into(),
                ))
            }
        }
        Ok(report)
    }

    fn triviality_phi0(&self) -> Result<VerificationReport> {
        let form = Phi0::new(self.alg)?;
        let result = triviality_test(self.alg, &form, &self.domain)?;
        let mut report = VerificationReport::new("triviality-phi0");
        let ok = result.outcome.is_infeasible() && result.reverify();
        report.record(ok, || {
            Failure::new(
                vec![format!("{} monomials", self.domain.len())],
                "infeasible with a re-verified certificate",
                result.outcome.verdict(),
            )
        });
        report.details = result.details();
        Ok(report)
    }

    fn parser_roundtrip(&self) -> Result<VerificationReport> {
        let n = self.opts.samples.unwrap_or(10_000);
        let mut rng = self.rng();
        let mut report = VerificationReport::new("parser-roundtrip");
        for _ in 0..n {
            let e = random_element(&mut rng, &self.domain, 4);
            let text = print_element(&e);
            let back = parse_element(&text, self.alg);
            let ok = back.as_ref().map(|b| *b == e).unwrap_or(false);
            report.record(ok, || {
                let got = match &back {
                    Ok(b) => print_element(b),
                    Err(err) => err.to_string(),
                };
                Failure::new(vec![text.clone()], text.clone(), got)
            });
        }
        Ok(report)
    }
}

/// A random rational `p/q` with `0 < |p| ≤ 9`, `1 ≤ q ≤ 5`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(p, rng.gen_range(1..=5))
}

/// Up to `max_terms` random terms over `pool`; may cancel to zero.
pub fn random_element(rng: &mut impl Rng, pool: &[Monomial], max_terms: usize) -> Element {
    let k = rng.gen_range(0..=max_terms);
    (0..k)
        .map(|_| (random_rational(rng), pool.choose(rng).expect("nonempty pool").clone()))
        .collect()
}

/// `ψ_f` for a seeded random `f` supported on bracket terms of `domain`.
pub fn random_coboundary(alg: &Algebra, domain: &[Monomial], seed: u64) -> Coboundary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Monomial> = domain.to_vec();
    if !domain.is_empty() {
        for _ in 0..64 {
            let (u, v) = (domain.choose(&mut rng).expect("nonempty"), domain.choose(&mut rng).expect("nonempty"));
            pool.extend(alg.bracket_monomials(u, v).monomials().cloned());
        }
    }
    pool.sort();
    pool.dedup();
    let mut f = LinearFunctional::new();
    if !pool.is_empty() {
        for _ in 0..12 {
            f.set(pool.choose(&mut rng).expect("nonempty").clone(), random_rational(&mut rng));
        }
    }
    Coboundary::new(alg, f)
}

/// The binomial identity for all `0 ≤ μ, ν, λ ≤ bound` and admissible `s`.
pub fn binomial_330(bound: u32) -> VerificationReport {
    let mut report = VerificationReport::new("binomial-330");
    for mu in 0..=bound {
        for nu in 0..=bound {
            for lam in 0..=bound {
                for s in 0..=(mu + nu + lam + 1) as i64 {
                    let c = check_binomial_identity(mu, nu, lam, s).expect("admissible s");
                    report.record(c.passed(), || {
                        Failure::new(
                            vec![format!("mu={mu} nu={nu} lambda={lam} s={s}")],
                            format_rational(&c.rhs),
                            format_rational(&c.lhs),
                        )
                    });
                }
            }
        }
    }
    report
}
