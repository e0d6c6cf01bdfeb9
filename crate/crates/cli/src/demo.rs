//! Named walkthroughs. Each builds an object, runs the checks that go with
//! it and reports one line per check.

use std::cmp::Ordering;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qreal::arith::{add_a, ell_inverse, mul_a, sub_a, Accuracy, Part};
use qreal::sequence::{
    cauchy_check, constant_seq, diagonal_limit, frozen_prefix_seq, gaussian_seq, lift_op, pair_prob, representative,
    seq_eq, BitPattern, Grid, Horizon, LiftOp, StateSequence, Status, Tail, DEFAULT_MAX_BITS,
};
use qreal::{
    eigenvalue, parse_compact, DigitString, DyadicComplex, LatticeSite, RealComponent, Sign, StringState, Superposition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Demo {
    Exam1,
    Bell,
    Gaussian,
    EntangledReal,
    Completeness,
    #[value(name = "x2-minus-1")]
    #[serde(rename = "x2-minus-1")]
    X2Minus1,
    Fuzz,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub name: Demo,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl DemoReport {
    pub fn render(&self) -> String {
        let name = self.name.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
        let mut out = format!("demo {name}\n");
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {mark}  {}: {}\n", c.claim, c.detail));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, claim: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { claim: claim.into(), passed, detail: detail.into() });
    }
}

fn st(text: &str) -> StringState {
    parse_compact(text).expect("demo literal")
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Certified => "certified",
        Status::Supported => "supported",
        Status::Refuted => "refuted",
        Status::Inconclusive => "inconclusive",
    }
}

pub fn run(demo: Demo, hz: &Horizon, seed: u64) -> DemoReport {
    let mut checks = Checks(Vec::new());
    match demo {
        Demo::Exam1 => exam1(&mut checks, hz),
        Demo::Bell => bell(&mut checks, hz),
        Demo::Gaussian => gaussian(&mut checks, hz),
        Demo::EntangledReal => entangled_real(&mut checks, hz),
        Demo::Completeness => completeness(&mut checks, hz),
        Demo::X2Minus1 => x2_minus_1(&mut checks, hz),
        Demo::Fuzz => fuzz(&mut checks, seed),
    }
    let passed = checks.0.iter().all(|c| c.passed);
    DemoReport { name: demo, checks: checks.0, passed }
}

/// Pair probabilities equal to 1 for `ell < j, k <= extent`; the first miss.
fn pairs_past_ell(seq: &StateSequence, hz: &Horizon) -> (usize, Option<String>) {
    let mut count = 0;
    for ell in 1..=hz.ell_max {
        let acc = Accuracy::new(ell).expect("positive");
        for j in ell as usize + 1..=hz.extent() {
            for k in ell as usize + 1..=hz.extent() {
                let p = pair_prob(seq, seq, j, k, acc);
                if p != 1.0 {
                    return (count, Some(format!("ell = {ell}, j = {j}, k = {k}: P = {p}")));
                }
                count += 1;
            }
        }
    }
    (count, None)
}

fn exam1(c: &mut Checks, hz: &Horizon) {
    let seq = frozen_prefix_seq(&BitPattern::zeros(), None, Tail::Plain, LatticeSite::default());
    let nonclassical = (1..=hz.extent()).all(|n| seq.at(n).len() == 2);
    c.add("every element is a two-term superposition", nonclassical, format!("n <= {}", hz.extent()));

    let v = cauchy_check(&seq, hz);
    let diagonal = v.witness.iter().all(|(&l, &h)| h == l as usize);
    c.add(
        "cauchy_check is certified with h(ell) = ell",
        v.status == Status::Certified && diagonal,
        format!("{}, witness {:?}", status_name(v.status), v.witness),
    );

    let (count, miss) = pairs_past_ell(&seq, hz);
    c.add(
        "P = 1 for all j, k > ell",
        miss.is_none(),
        miss.unwrap_or_else(|| format!("{count} triples up to ell = {}", hz.ell_max)),
    );

    let zero = constant_seq(&StringState::zero());
    let e = seq_eq(&seq, &zero, Part::Both, hz);
    c.add("the sequence equals 0", e.holds(), status_name(e.status));
}

fn bell(c: &mut Checks, hz: &Horizon) {
    let z = BitPattern::zeros();
    let seq = frozen_prefix_seq(&z, Some(&z), Tail::Bell, LatticeSite::default());
    let entangled = (1..=hz.extent()).all(|n| {
        let psi = seq.at(n);
        psi.len() == 2 && psi.terms().all(|(s, _)| s.re.value() == s.im.value())
    });
    let at3: Vec<String> = seq.at(3).terms().map(|(s, _)| s.to_string()).collect();
    c.add(
        "each element entangles the real and imaginary digit",
        entangled,
        format!("n = 3: ({}) / sqrt 2", at3.join(" + ")),
    );

    let v = cauchy_check(&seq, hz);
    c.add("cauchy_check is certified", v.status == Status::Certified, format!("witness {:?}", v.witness));

    let (count, miss) = pairs_past_ell(&seq, hz);
    c.add(
        "P = 1 for all j, k > ell",
        miss.is_none(),
        miss.unwrap_or_else(|| format!("{count} triples up to ell = {}", hz.ell_max)),
    );

    let zero = constant_seq(&StringState::zero());
    let e = seq_eq(&seq, &zero, Part::Both, hz);
    c.add("the sequence equals 0", e.holds(), status_name(e.status));
}

fn gaussian(c: &mut Checks, hz: &Horizon) {
    let site = LatticeSite::default();
    let wide = gaussian_seq(&BitPattern::zeros(), &st("1+").re, 0, DEFAULT_MAX_BITS, site);
    let wide = match wide {
        Ok(s) => s,
        Err(e) => return c.add("sigma = 1 builds", false, e.to_string()),
    };
    let norms_ok = (1..=hz.extent()).all(|n| (wide.at(n).norm_sqr() - 1.0).abs() < 1e-9);
    c.add("elements are normalized", norms_ok, format!("n <= {}", hz.extent()));

    let acc = Accuracy::new(2).expect("positive");
    let early = pair_prob(&wide, &wide, 4, 5, acc);
    let late = pair_prob(&wide, &wide, hz.h_max, hz.extent(), acc);
    c.add(
        "pair probability grows with the index",
        late > early,
        format!("ell = 2: P(4, 5) = {early:.4}, P({}, {}) = {late:.4}", hz.h_max, hz.extent()),
    );

    let v = cauchy_check(&wide, hz);
    c.add(
        "sigma = 1 is not refuted",
        v.status != Status::Refuted,
        format!("{} (the spread shrinks like n^-1/2)", status_name(v.status)),
    );

    let narrow = gaussian_seq(&BitPattern::parse("01").expect("pattern"), &st("0+0000000001").re, 0, 10, site);
    let narrow = match narrow {
        Ok(s) => s,
        Err(e) => return c.add("sigma = 2^-10 builds", false, e.to_string()),
    };
    let half = st("0+1");
    let top = (4..=hz.extent()).map(|n| narrow.at(n).amplitude(&half).norm_sqr()).fold(1.0, f64::min);
    c.add(
        "sigma = 2^-10 concentrates on 0.5",
        top > 0.99,
        format!("min P(0.5) over 4 <= n <= {} is {top:.6}", hz.extent()),
    );
}

fn entangled_real(c: &mut Checks, hz: &Horizon) {
    let z = BitPattern::zeros();
    let seq = frozen_prefix_seq(&z, Some(&z), Tail::AntiBell, LatticeSite::default());
    let quantum = (1..=hz.extent()).all(|n| seq.at(n).terms().any(|(s, _)| !s.im.is_zero()));
    c.add("elements carry imaginary digits", quantum, format!("n <= {}", hz.extent()));

    let rep = representative(&seq, hz);
    let bad = (1..=64).find(|&n| rep.at(n).as_basis().is_none_or(|x| !x.im.is_zero()));
    c.add(
        "the representative has a zero imaginary component",
        bad.is_none(),
        match bad {
            None => "n <= 64".to_owned(),
            Some(n) => format!("n = {n}: {:?}", rep.at(n).as_basis().map(|s| s.to_string())),
        },
    );

    let zero = constant_seq(&StringState::zero());
    let v = seq_eq(&seq, &zero, Part::Imaginary, hz);
    c.add("Im equals 0", v.holds(), status_name(v.status));
}

fn completeness(c: &mut Checks, hz: &Horizon) {
    let third = BitPattern::parse("0(01)").expect("pattern");
    let grid = Grid::from_fn("truncations of 1/3", LatticeSite::default(), move |n, m| {
        let d = third.truncate(0, -(n.min(m) as i64));
        Superposition::basis(StringState::real(RealComponent::new(Sign::Plus, d)))
    });
    match diagonal_limit(&grid, hz) {
        Err(e) => c.add("rows and grid are Cauchy", false, e.to_string()),
        Ok(lim) => {
            c.add("the diagonal is Cauchy", lim.cauchy.holds(), status_name(lim.cauchy.status));
            let all = lim.convergence.len() == hz.ell_max as usize;
            c.add(
                "the rows converge to the diagonal",
                all && lim.status.holds(),
                format!("{}, h(ell) = {:?}", status_name(lim.status), lim.convergence),
            );
            let at6 = lim.sequence.at(6).as_basis().map(|s| s.to_string()).unwrap_or_default();
            c.add("diagonal element 6 is 0+010101", at6 == "0+010101", at6);
        }
    }
}

fn x2_minus_1(c: &mut Checks, hz: &Horizon) {
    let i = constant_seq(&st("0+;1+"));
    let minus_one = constant_seq(&st("1-"));
    let sq = lift_op(LiftOp::Mul, &i, &i);
    let v = seq_eq(&sq, &minus_one, Part::Both, hz);
    c.add("i * i equals -1", v.status == Status::Certified, status_name(v.status));

    let root = lift_op(LiftOp::Add, &sq, &constant_seq(&StringState::one()));
    let zero = constant_seq(&StringState::zero());
    let v = seq_eq(&root, &zero, Part::Both, hz);
    c.add("i is a root of x^2 + 1", v.status == Status::Certified, status_name(v.status));
}

fn random_component<R: Rng>(rng: &mut R, max_width: usize) -> RealComponent {
    let width = rng.gen_range(1..=max_width);
    let lo = -(rng.gen_range(0..width) as i64);
    let bits = (0..width).map(|_| rng.gen_bool(0.5)).collect();
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    RealComponent::new(sign, DigitString::new(lo, bits).expect("interval holds the binal point"))
}

fn random_state<R: Rng>(rng: &mut R, max_width: usize) -> StringState {
    let re = random_component(rng, max_width);
    let im = if rng.gen_bool(0.75) { random_component(rng, max_width) } else { RealComponent::zero() };
    StringState::new(re, im, LatticeSite::default())
}

fn fuzz(c: &mut Checks, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut miss = None;
    let pairs = 1000;
    for _ in 0..pairs {
        let (a, b) = (random_state(&mut rng, 24), random_state(&mut rng, 24));
        let (va, vb) = (eigenvalue(&a), eigenvalue(&b));
        if eigenvalue(&add_a(&a, &b)) != &va + &vb {
            miss = Some(format!("add({a}, {b})"));
        } else if eigenvalue(&sub_a(&a, &b)) != &va - &vb {
            miss = Some(format!("sub({a}, {b})"));
        } else if eigenvalue(&mul_a(&a, &b)) != &va * &vb {
            miss = Some(format!("mul({a}, {b})"));
        }
        if miss.is_some() {
            break;
        }
    }
    c.add(
        "arithmetic agrees with exact rationals",
        miss.is_none(),
        miss.unwrap_or_else(|| format!("{pairs} pairs, seed {seed}")),
    );

    let mut miss = None;
    for _ in 0..pairs {
        let mut x = random_component(&mut rng, 12);
        if x.is_zero() {
            continue;
        }
        x = RealComponent::new(Sign::Plus, x.digits);
        let ell = rng.gen_range(1..=16u32);
        let inv = ell_inverse(&x, Accuracy::new(ell).expect("positive")).expect("positive input");
        let p = &inv.value() * &x.value();
        let low = &DyadicComplex::one() - &DyadicComplex::pow2(-(ell as i64));
        if p.cmp_re(&low) == Ordering::Less || p.cmp_re(&DyadicComplex::one()) == Ordering::Greater {
            miss = Some(format!("{} at ell = {ell}: product {p}", StringState::real(x)));
            break;
        }
    }
    c.add(
        "inverse products lie in [1 - 2^-ell, 1]",
        miss.is_none(),
        miss.unwrap_or_else(|| format!("{pairs} draws, seed {seed}")),
    );
}
