//! Randomized and exhaustive verification suites. Every suite draws from
//! its own substream of the configured seed and reports one line per check.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use super::RunConfig;
use crate::fock::{
    field_ops, ladder, ordering_form, verify_with, wick_normal_form, FockError, FockOperator, FockRep, Ordering,
    Quantizer,
};
use crate::kleingordon::{wick_form, Fourier, KGConfig, KgError, KgModeSet, Trig};
use crate::symalg::{
    commutator, lemma1_check, poisson, poisson_correspondence, project_pi, star, star_iterated, sym_mul,
    AlgebraElement, GaussRational, HPoly, Monomial, PairingForm, Scalar,
};
use crate::testkit::{
    injection_oracle, random_element_with, random_operator_word, random_pairing, to_float, tolerance, ElementShape,
    RandomStream,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Assoc,
    Poisson,
    Lemma1,
    Ccr,
    Ordre,
    Wick,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Assoc, Suite::Poisson, Suite::Lemma1, Suite::Ccr, Suite::Ordre, Suite::Wick];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assoc => "assoc",
            Suite::Poisson => "poisson",
            Suite::Lemma1 => "lemma1",
            Suite::Ccr => "ccr",
            Suite::Ordre => "ordre",
            Suite::Wick => "wick",
            Suite::All => "all",
        }
    }

    /// Whether the suite builds Fock-space operators.
    pub fn uses_fock(self) -> bool {
        matches!(self, Suite::Ccr | Suite::Ordre | Suite::Wick | Suite::All)
    }

    fn stream_id(self) -> u64 {
        self as u64 + 1
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::EACH.to_vec(),
            s => vec![s],
        }
    }
}

/// Result of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// `None` for exact checks.
    pub max_dev: Option<f64>,
    pub tolerance: f64,
}

impl CheckLine {
    fn exact(name: &'static str, passed: usize, total: usize) -> Self {
        CheckLine { name, passed, total, max_dev: None, tolerance: 0.0 }
    }

    fn float(name: &'static str, devs: &[f64], tolerance: f64) -> Self {
        let passed = devs.iter().filter(|d| **d <= tolerance).count();
        let max_dev = devs.iter().copied().fold(0.0, f64::max);
        CheckLine { name, passed, total: devs.len(), max_dev: Some(max_dev), tolerance }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{}\t{}\t{}/{}\t", self.name, verdict, self.passed, self.total)?;
        match self.max_dev {
            None => f.write_str("exact"),
            Some(d) => write!(f, "max_dev={d:.3e}\ttol={:.0e}", self.tolerance),
        }
    }
}

/// Failure that stops a suite before it produces a verdict.
#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("guard violation: Ncap = {ncap} is below 2 * max_degree = {needed}")]
    Guard { ncap: u32, needed: u32 },
    #[error(transparent)]
    Kg(#[from] KgError),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// Refuses Fock suites whose truncation cannot hold a product of two
/// elements of degree `max_degree`.
pub fn guard(suite: Suite, cfg: &RunConfig) -> Result<(), SuiteError> {
    let needed = 2 * cfg.max_degree;
    if suite.uses_fock() && cfg.ncap < needed {
        return Err(SuiteError::Guard { ncap: cfg.ncap, needed });
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<CheckLine>, SuiteError> {
    guard(suite, cfg)?;
    let mut out = Vec::new();
    for s in suite.members() {
        let stream = RandomStream::new(cfg.seed).split(s.stream_id());
        let trials = cfg.trials as usize;
        match s {
            Suite::Assoc => out.extend(assoc_suite(&stream, trials)),
            Suite::Poisson => out.extend(poisson_suite(&stream, trials)),
            Suite::Lemma1 => out.push(lemma1_suite(&stream, trials)),
            Suite::Ccr => out.extend(ccr_suite(cfg)?),
            Suite::Ordre => out.push(ordering_suite(&stream, cfg, Ordering::Hbar)?),
            Suite::Wick => out.extend(wick_suite(&stream, cfg)?),
            Suite::All => unreachable!("expanded by members"),
        }
    }
    Ok(out)
}

/// Modes of the exact algebra suites.
pub const ALGEBRA_MODES: usize = 5;

/// Element family of the exact algebra suites: at most five terms, degree
/// at most 4, every mode exponent at most 2, hbar degree at most 1.
pub fn algebra_shape(modes: usize) -> ElementShape {
    ElementShape::new(modes, 4, 1).max_exponent(2)
}

fn triple(s: &mut RandomStream, shape: &ElementShape) -> [AlgebraElement<GaussRational>; 3] {
    [random_element_with(s, shape), random_element_with(s, shape), random_element_with(s, shape)]
}

pub fn assoc_suite(stream: &RandomStream, trials: usize) -> Vec<CheckLine> {
    let shape = algebra_shape(ALGEBRA_MODES);
    let (mut assoc, mut deform) = (0, 0);
    for t in 0..trials {
        let mut s = stream.split(t as u64);
        let form = random_pairing(&mut s, ALGEBRA_MODES);
        let [a, b, c] = triple(&mut s, &shape);
        let ab = star(&form, &a, &b).expect("dims agree");
        let left = star(&form, &ab, &c).expect("dims agree");
        let right = star(&form, &a, &star(&form, &b, &c).expect("dims agree")).expect("dims agree");
        assoc += usize::from(left == right);
        let pi = sym_mul(&project_pi(&a), &project_pi(&b)).expect("dims agree");
        deform += usize::from(project_pi(&ab) == pi);
    }
    vec![
        CheckLine::exact("assoc", assoc, trials),
        CheckLine::exact("deformation", deform, trials),
        star_agreement(stream),
    ]
}

/// Every monomial over `modes` modes of degree at most `max_degree`.
pub fn all_monomials(modes: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; modes];
    fn fill(r: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if r == exps.len() {
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[r] = e;
            fill(r + 1, left - e, exps, out);
        }
        exps[r] = 0;
    }
    fill(0, max_degree, &mut exps, &mut out);
    out.sort();
    out
}

/// Closed form, iterated single contractions and the injection oracle on
/// every pair of monomials over three modes with degree at most 4.
pub fn star_agreement(stream: &RandomStream) -> CheckLine {
    let mut s = stream.split(u64::MAX);
    let form = random_pairing(&mut s, 3);
    let monos = all_monomials(3, 4);
    let unit = |m: &Monomial| AlgebraElement::term(m.clone(), HPoly::constant(GaussRational::one()));
    let mut passed = 0;
    for a in &monos {
        for b in &monos {
            let oracle = injection_oracle(&form, a, b).expect("degree within the oracle cap");
            let (ea, eb) = (unit(a), unit(b));
            let closed = star(&form, &ea, &eb).expect("dims agree");
            let iterated = star_iterated(&form, &ea, &eb).expect("dims agree");
            passed += usize::from(closed == oracle && iterated == oracle);
        }
    }
    CheckLine::exact("star3", passed, monos.len() * monos.len())
}

pub fn poisson_suite(stream: &RandomStream, trials: usize) -> Vec<CheckLine> {
    let shape = algebra_shape(ALGEBRA_MODES);
    let (mut corr, mut jacobi, mut leibniz) = (0, 0, 0);
    for t in 0..trials {
        let mut s = stream.split(t as u64);
        let form = random_pairing(&mut s, ALGEBRA_MODES);
        let [a, b, c] = triple(&mut s, &shape);
        corr += usize::from(poisson_correspondence(&form, &a, &b).is_ok());
        let br = |x: &AlgebraElement<GaussRational>, y: &AlgebraElement<GaussRational>| {
            poisson(&form, x, y).expect("dims agree")
        };
        let cyclic = br(&a, &br(&b, &c)).add(&br(&b, &br(&c, &a))).and_then(|x| x.add(&br(&c, &br(&a, &b))));
        jacobi += usize::from(cyclic.map(|x| x.is_zero()).unwrap_or(false));
        let lhs = br(&a, &sym_mul(&b, &c).expect("dims agree"));
        let rhs = sym_mul(&br(&a, &b), &c).and_then(|x| x.add(&sym_mul(&b, &br(&a, &c))?));
        leibniz += usize::from(rhs.map(|r| r == lhs).unwrap_or(false));
    }
    vec![
        CheckLine::exact("poisson", corr, trials),
        CheckLine::exact("jacobi", jacobi, trials),
        CheckLine::exact("leibniz", leibniz, trials),
    ]
}

/// Contraction distribution over `∂_{z_1}⋯∂_{z_k}` for `k = 1, 2, 3`.
pub fn lemma1_suite(stream: &RandomStream, trials: usize) -> CheckLine {
    let shape = algebra_shape(ALGEBRA_MODES);
    let mut passed = 0;
    for t in 0..trials {
        let mut s = stream.split(t as u64);
        let a = random_element_with(&mut s, &shape);
        let b = random_element_with(&mut s, &shape);
        let ok = (1..=3).all(|k| {
            let z: Vec<usize> = (0..k).map(|_| s.gen_range(0..ALGEBRA_MODES)).collect();
            lemma1_check(k, &z, &a, &b)
        });
        passed += usize::from(ok);
    }
    CheckLine::exact("lemma1", passed, trials)
}

/// Real trigonometric basis `cos(k_n x)`, `n ≥ 0`, and `sin(k_n x)`, `n ≥ 1`.
pub fn trig_basis(cfg: &KGConfig) -> Vec<Fourier> {
    let mut out = Vec::new();
    for n in 0..=cfg.kmax {
        out.push(Fourier::trig(Trig::Cos, n, cfg));
        if n > 0 {
            out.push(Fourier::trig(Trig::Sin, n, cfg));
        }
    }
    out
}

fn deviation(op: &FockOperator, scalar: Complex64, rep: &FockRep) -> f64 {
    let target = rep.identity().scale(scalar);
    op.max_abs_diff_on(&target, op.guard_dim(rep.space()))
}

/// Canonical commutation relations over every pair of basis functions,
/// and the ladder commutator.
pub fn ccr_suite(cfg: &RunConfig) -> Result<Vec<CheckLine>, SuiteError> {
    let kg = cfg.kg_config()?;
    let rep = FockRep::new(&kg, cfg.ncap)?;
    let basis = trig_basis(&kg);
    let ops = basis.iter().map(|f| field_ops(f, &rep)).collect::<Result<Vec<_>, _>>()?;
    let ladders = basis.iter().map(|f| ladder(f.coeffs(), &rep)).collect::<Result<Vec<_>, _>>()?;
    let zero = Complex64::new(0.0, 0.0);
    let (mut ccr, mut lad) = (Vec::new(), Vec::new());
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate() {
            let (phi_f, pi_f) = &ops[i];
            let (phi_g, pi_g) = &ops[j];
            let expected = Complex64::new(0.0, 1.0) * f.integral_product(g);
            let d = deviation(&phi_f.commutator(pi_g), expected, &rep)
                .max(deviation(&phi_f.commutator(phi_g), zero, &rep))
                .max(deviation(&pi_f.commutator(pi_g), zero, &rep));
            ccr.push(d);

            let (a_f, _) = &ladders[i];
            let (a_g, ad_g) = &ladders[j];
            let scalar: Complex64 = f.indices().map(|n| rep.mu(n) * f.get(-n) * g.get(n)).sum();
            let d = deviation(&a_f.commutator(ad_g), scalar, &rep).max(deviation(&a_f.commutator(a_g), zero, &rep));
            lad.push(d);
        }
    }
    let tol = cfg.tolerance.min(tolerance::OPERATOR);
    Ok(vec![CheckLine::float("ccr", &ccr, tol), CheckLine::float("ladder", &lad, tol)])
}

/// Shape of the random elements fed to the ordering morphisms.
pub fn ordering_shape(set: &KgModeSet, cfg: &RunConfig) -> ElementShape {
    ElementShape::new(set.len(), cfg.max_degree, 1)
}

/// `Q(A)Q(B)` against `Q(A ⋆ B)` on random pairs.
pub fn ordering_suite(stream: &RandomStream, cfg: &RunConfig, which: Ordering) -> Result<CheckLine, SuiteError> {
    let kg = cfg.kg_config()?;
    let set = KgModeSet::full(&kg);
    let rep = FockRep::new(&kg, cfg.ncap)?;
    let quantizer = Quantizer::new(&set, &rep, which)?;
    let form = ordering_form(&set, &rep, which)?;
    let shape = ordering_shape(&set, cfg);
    let mut devs = Vec::with_capacity(cfg.trials as usize);
    for t in 0..cfg.trials as u64 {
        let mut s = stream.split(t);
        let a = random_element_with(&mut s, &shape);
        let b = random_element_with(&mut s, &shape);
        devs.push(verify_with(&a, &b, &quantizer, &form)?.max_abs_dev);
    }
    let tol = cfg.tolerance.min(tolerance::ORDERING);
    Ok(CheckLine::float(which.theorem(), &devs, tol))
}

/// Wick rewriter, the Wick star product and the normal-ordering morphism.
pub fn wick_suite(stream: &RandomStream, cfg: &RunConfig) -> Result<Vec<CheckLine>, SuiteError> {
    let kg = cfg.kg_config()?;
    let rep = FockRep::new(&kg, cfg.ncap)?;
    let trials = cfg.trials as usize;
    let op_tol = cfg.tolerance.min(tolerance::OPERATOR);
    let alg_tol = cfg.tolerance.min(tolerance::ALGEBRA);

    let max_word = cfg.ncap.min(4) as usize;
    let mut lemma = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut s = stream.split(t as u64);
        let total = s.gen_range(0..=max_word);
        let mut sizes = [0usize; 4];
        for _ in 0..total {
            sizes[s.gen_range(0..4)] += 1;
        }
        let left = random_operator_word(&mut s, &kg, sizes[0], sizes[1]);
        let right = random_operator_word(&mut s, &kg, sizes[2], sizes[3]);
        let direct = left.matrix(&rep)?.compose(&right.matrix(&rep)?);
        let mut rewritten = FockOperator::zero(rep.dim());
        for w in wick_normal_form(&left, &right)? {
            rewritten = rewritten.add(&w.matrix(&rep)?);
        }
        let guard = rep.space().guard_dim(cfg.ncap - total as u32);
        lemma.push(direct.max_abs_diff_on(&rewritten, guard));
    }

    let set = KgModeSet::full(&kg);
    let w = wick_form(&set, &kg);
    let sigma = ordering_form(&set, &rep, Ordering::Hbar)?;
    let (assoc, deform, bracket) = wick_algebra(stream, &w, &sigma, trials);

    let quant = ordering_suite(&stream.split(u64::MAX), cfg, Ordering::Wick)?;
    let unit = Quantizer::new(&set, &rep, Ordering::Wick)?.apply(&AlgebraElement::<Complex64>::one(set.len()))?;
    let unit_ok = unit == rep.identity();

    Ok(vec![
        CheckLine::float("wick_lemma", &lemma, op_tol),
        CheckLine::float("wick_assoc", &assoc, alg_tol),
        CheckLine::float("wick_deformation", &deform, alg_tol),
        CheckLine::float("wick_poisson", &bracket, alg_tol),
        quant,
        CheckLine::exact("thetaW_unit", usize::from(unit_ok), 1),
    ])
}

/// Element family of the complex-float Wick algebra checks.
pub fn wick_algebra_shape(modes: usize) -> ElementShape {
    ElementShape::new(modes, 3, 1).max_exponent(2)
}

/// Deviations for associativity of `⋆_W`, the `hbar = 0` projection, and
/// `hbar¹` of the `⋆_W` commutator against `i` times the covariant bracket.
pub fn wick_algebra(
    stream: &RandomStream,
    w: &PairingForm<Complex64>,
    sigma: &PairingForm<Complex64>,
    trials: usize,
) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let shape = wick_algebra_shape(w.dim());
    let i = Complex64::new(0.0, 1.0);
    let (mut assoc, mut deform, mut bracket) = (Vec::new(), Vec::new(), Vec::new());
    for t in 0..trials {
        let mut s = stream.split((1 << 32) + t as u64);
        let [a, b, c] = triple(&mut s, &shape).map(|x| to_float(&x));
        let ab = star(w, &a, &b).expect("dims agree");
        let left = star(w, &ab, &c).expect("dims agree");
        let right = star(w, &a, &star(w, &b, &c).expect("dims agree")).expect("dims agree");
        assoc.push(left.max_abs_diff(&right));
        let pi = sym_mul(&project_pi(&a), &project_pi(&b)).expect("dims agree");
        deform.push(project_pi(&ab).max_abs_diff(&pi));
        let first = commutator(w, &a, &b).expect("dims agree").hbar_coeff(1);
        let expected = poisson(sigma, &project_pi(&a), &project_pi(&b)).expect("dims agree").scale(&i);
        bracket.push(first.max_abs_diff(&expected));
    }
    (assoc, deform, bracket)
}
