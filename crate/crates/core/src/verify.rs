//! Property suites run by the `verify` verb. Each check is exact; random
//! inputs come from a seeded generator so runs are reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::habiro::{q_pochhammer, HabiroElement};
use crate::homcob::{HomologyCobordism, MappingClass, Twist};
use crate::jacobi::{
    coproduct, counit, diagram_mul, enumerate_diagrams, relations_at, weight_series, weight_system,
    DiagramAlgebra, DiagramCombination, JacobiDiagram, WeightData,
};
use crate::linalg::{rat, smith_normal_form, IntMatrix, Rational};
use crate::poly::IntPoly;
use crate::symplectic::{
    moyal_product, poisson_bracket, BasisTree, PolynomialObservable, SymplecticLattice,
    TreeCombination, TreeReducer,
};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    HabiroHom,
    WeightsWellDefined,
    Hopf,
    Symplectic,
    Cobordism,
    Smith,
    DiagramSquare,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 7] = [
        Suite::HabiroHom,
        Suite::WeightsWellDefined,
        Suite::Hopf,
        Suite::Symplectic,
        Suite::Cobordism,
        Suite::Smith,
        Suite::DiagramSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HabiroHom => "habiro-hom",
            Suite::WeightsWellDefined => "weights-welldefined",
            Suite::Hopf => "hopf",
            Suite::Symplectic => "symplectic",
            Suite::Cobordism => "cobordism",
            Suite::Smith => "smith",
            Suite::DiagramSquare => "diagram-square",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::NAMED
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First failing input, when any.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: failure.is_none(),
            counterexample: failure,
        });
    }
}

/// Sample sizes; the defaults match the acceptance targets.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub habiro_pairs: usize,
    pub diagram_pairs: usize,
    pub moyal_triples: usize,
    pub commutator_pairs: usize,
    pub cobordism_triples: usize,
    pub twist_words: usize,
    pub smith_matrices: usize,
    pub square_pairs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            habiro_pairs: 200,
            diagram_pairs: 100,
            moyal_triples: 100,
            commutator_pairs: 100,
            cobordism_triples: 100,
            twist_words: 100,
            smith_matrices: 200,
            square_pairs: 20,
        }
    }
}

pub fn run(suite: Suite, config: &Config) -> Result<Report> {
    let mut report = Report::default();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::NAMED.to_vec(),
        s => vec![s],
    };
    for s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        match s {
            Suite::HabiroHom => habiro_hom(&mut rng, config, &mut report)?,
            Suite::WeightsWellDefined => weights_welldefined(&mut rng, config, &mut report)?,
            Suite::Hopf => hopf(&mut report)?,
            Suite::Symplectic => symplectic(&mut rng, config, &mut report)?,
            Suite::Cobordism => cobordism(&mut rng, config, &mut report)?,
            Suite::Smith => smith(&mut rng, config, &mut report),
            Suite::DiagramSquare => diagram_square(&mut rng, config, &mut report)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(report)
}

fn first_failure<T, F>(items: impl IntoIterator<Item = T>, mut ok: F) -> Result<Option<String>>
where
    T: fmt::Debug,
    F: FnMut(&T) -> Result<bool>,
{
    for x in items {
        if !ok(&x)? {
            return Ok(Some(format!("{x:?}")));
        }
    }
    Ok(None)
}

pub fn random_poly<R: Rng>(rng: &mut R, max_degree: usize, bound: i64) -> IntPoly {
    let d = rng.gen_range(0..=max_degree);
    IntPoly::from_i64(&(0..=d).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// Factorial series with up to `level + 1` random coefficients.
pub fn random_habiro<R: Rng>(rng: &mut R, level: usize) -> HabiroElement {
    let len = rng.gen_range(0..=level + 1);
    let fs: Vec<IntPoly> = (0..len).map(|_| random_poly(rng, 4, 5)).collect();
    HabiroElement::from_factorial_series(&fs, level).expect("length within level")
}

fn habiro_hom(rng: &mut ChaCha8Rng, config: &Config, report: &mut Report) -> Result<()> {
    const LEVEL: usize = 5;
    let pairs: Vec<_> = (0..config.habiro_pairs)
        .map(|_| (random_habiro(rng, LEVEL), random_habiro(rng, LEVEL)))
        .collect();
    report.record(
        "ev_additive_multiplicative",
        first_failure(&pairs, |(a, b)| {
            for n in 1..=LEVEL + 1 {
                let (ea, eb) = (a.evaluate_at_root(n)?, b.evaluate_at_root(n)?);
                if a.add(b)?.evaluate_at_root(n)? != &ea + &eb
                    || a.mul(b)?.evaluate_at_root(n)? != &ea * &eb
                {
                    return Ok(false);
                }
            }
            Ok(true)
        })?,
    );
    report.record(
        "taylor_additive_multiplicative",
        first_failure(&pairs, |(a, b)| {
            let (ta, tb) = (a.taylor_at_one(), b.taylor_at_one());
            Ok(a.add(b)?.taylor_at_one() == ta.add(&tb) && a.mul(b)?.taylor_at_one() == ta.mul(&tb))
        })?,
    );
    report.record(
        "pochhammer_vanishes_at_low_roots",
        first_failure(1..=LEVEL + 1, |&k| {
            let p = HabiroElement::from_poly(&q_pochhammer(k), LEVEL);
            for n in 1..=k {
                if !p.evaluate_at_root(n)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        })?,
    );
    report.record(
        "pochhammer_taylor_valuation",
        first_failure(1..=LEVEL + 1, |&k| {
            let t = HabiroElement::from_poly(&q_pochhammer(k), LEVEL).taylor_at_one();
            Ok(t.coefficients()[..k].iter().all(Zero::is_zero))
        })?,
    );
    Ok(())
}

fn all_diagrams(max_degree: usize) -> Vec<JacobiDiagram> {
    (0..=max_degree).flat_map(enumerate_diagrams).collect()
}

fn weights_welldefined(rng: &mut ChaCha8Rng, config: &Config, report: &mut Report) -> Result<()> {
    let data = [WeightData::epsilon(), WeightData::sl2()];
    let diagrams = all_diagrams(3);
    report.record(
        "relations_vanish",
        first_failure(&diagrams, |d| {
            for rel in relations_at(d) {
                for w in &data {
                    let s: Rational = rel
                        .terms
                        .iter()
                        .map(|(c, t)| rat(*c as i64) * weight_system(w, t))
                        .sum();
                    if !s.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })?,
    );
    let theta = weight_system(&WeightData::epsilon(), &JacobiDiagram::theta());
    report.record(
        "theta_is_six",
        (theta != rat(6)).then(|| format!("W(theta) = {theta}")),
    );
    let pairs: Vec<_> = (0..config.diagram_pairs)
        .map(|_| {
            (
                diagrams[rng.gen_range(0..diagrams.len())].clone(),
                diagrams[rng.gen_range(0..diagrams.len())].clone(),
            )
        })
        .collect();
    report.record(
        "multiplicative",
        first_failure(&pairs, |(a, b)| {
            let u = a.disjoint_union(b);
            Ok(data
                .iter()
                .all(|w| weight_system(w, &u) == weight_system(w, a) * weight_system(w, b)))
        })?,
    );
    Ok(())
}

type Triple = BTreeMap<(JacobiDiagram, JacobiDiagram, JacobiDiagram), Rational>;

fn add_triple(out: &mut Triple, key: (JacobiDiagram, JacobiDiagram, JacobiDiagram), c: Rational) {
    let e = out.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        out.remove(&key);
    }
}

/// `(Δ ⊗ id) Δ` and `(id ⊗ Δ) Δ` of one diagram.
pub fn double_coproducts(d: &JacobiDiagram) -> (Triple, Triple) {
    let level = d.degree();
    let delta = coproduct(&DiagramCombination::single(d.clone(), level));
    let (mut left, mut right) = (Triple::new(), Triple::new());
    for ((a, b), c) in delta.terms() {
        for ((a1, a2), c1) in coproduct(&DiagramCombination::single(a.clone(), level)).terms() {
            add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c1);
        }
        for ((b1, b2), c2) in coproduct(&DiagramCombination::single(b.clone(), level)).terms() {
            add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    (left, right)
}

fn hopf(report: &mut Report) -> Result<()> {
    let diagrams = all_diagrams(3);
    report.record(
        "coassociative",
        first_failure(&diagrams, |d| {
            let (l, r) = double_coproducts(d);
            Ok(l == r)
        })?,
    );
    report.record(
        "counit",
        first_failure(&diagrams, |d| {
            let single = DiagramCombination::single((*d).clone(), d.degree());
            let delta = coproduct(&single);
            let (mut left, mut right) = (
                DiagramCombination::zero(d.degree()),
                DiagramCombination::zero(d.degree()),
            );
            for ((a, b), c) in delta.terms() {
                let ea = counit(&DiagramCombination::single(a.clone(), d.degree()));
                let eb = counit(&DiagramCombination::single(b.clone(), d.degree()));
                left.try_add_term(c * ea, b)?;
                right.try_add_term(c * eb, a)?;
            }
            Ok(left == single && right == single)
        })?,
    );
    let algebra = DiagramAlgebra::default();
    let theta = DiagramCombination::single(JacobiDiagram::theta(), 3);
    let exp = theta.exp()?;
    report.record(
        "exp_theta_group_like",
        (!algebra.is_group_like(&exp, 3)?).then(|| exp.to_string()),
    );
    let one_plus = DiagramCombination::one(3).add(&theta);
    report.record(
        "one_plus_theta_not_group_like",
        algebra.is_group_like(&one_plus, 3)?.then(|| one_plus.to_string()),
    );
    let square = diagram_mul(&theta, &theta).product;
    report.record(
        "theta_squared_coproduct",
        (coproduct(&square).terms().len() != 3).then(|| square.to_string()),
    );
    Ok(())
}

/// Struts and nonvanishing tripods on basis labels.
pub fn low_degree_trees(h: SymplecticLattice) -> Vec<TreeCombination> {
    let n = h.rank();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x..n {
            out.push(TreeCombination::single(h, &BasisTree::strut(x, y)));
        }
    }
    for x in 0..n {
        for y in x..n {
            for z in y..n {
                let c = TreeCombination::single(h, &BasisTree::tripod(x, y, z));
                if !c.is_zero() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Up to five terms of degree at most `max_degree`, `t`-degree below 2.
pub fn random_observable<R: Rng>(rng: &mut R, h: SymplecticLattice, max_degree: u32, order: usize) -> PolynomialObservable {
    let mut p = PolynomialObservable::zero(h, order);
    for _ in 0..rng.gen_range(1..=5) {
        let mut exps = vec![0u32; h.rank()];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..h.rank())] += 1;
        }
        let c = Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
        let t = rng.gen_range(0..2u32.min(order as u32));
        let m = PolynomialObservable::monomial(h, order, c, t, exps).expect("rank matches");
        p = p.add(&m).expect("same lattice");
    }
    p
}

fn symplectic(rng: &mut ChaCha8Rng, config: &Config, report: &mut Report) -> Result<()> {
    let mut jacobi = None;
    let mut antisym = None;
    for g in 1..=2 {
        let h = SymplecticLattice::new(g);
        let red = TreeReducer::new(h);
        let gens = low_degree_trees(h);
        for a in &gens {
            for b in &gens {
                let s = red.bracket(a, b)?.add(&red.bracket(b, a)?);
                if antisym.is_none() && !red.is_zero_class(&s)? {
                    antisym = Some(format!("{a} , {b}"));
                }
                for c in &gens {
                    if jacobi.is_some() {
                        continue;
                    }
                    let sum = red
                        .bracket(&red.bracket(a, b)?, c)?
                        .add(&red.bracket(&red.bracket(b, c)?, a)?)
                        .add(&red.bracket(&red.bracket(c, a)?, b)?);
                    if !red.is_zero_class(&sum)? {
                        jacobi = Some(format!("{a} , {b} , {c}"));
                    }
                }
            }
        }
    }
    report.record("tree_bracket_jacobi", jacobi);
    report.record("tree_bracket_antisymmetric", antisym);

    const ORDER: usize = 4;
    let triples: Vec<_> = (0..config.moyal_triples)
        .map(|_| {
            let h = SymplecticLattice::new(rng.gen_range(1..=2));
            (
                random_observable(rng, h, 4, ORDER),
                random_observable(rng, h, 4, ORDER),
                random_observable(rng, h, 4, ORDER),
            )
        })
        .collect();
    report.record(
        "moyal_associative",
        first_failure(&triples, |(p, q, r)| {
            let l = moyal_product(&moyal_product(p, q, ORDER)?, r, ORDER)?;
            let rr = moyal_product(p, &moyal_product(q, r, ORDER)?, ORDER)?;
            Ok(l == rr)
        })?,
    );
    let pairs: Vec<_> = (0..config.commutator_pairs)
        .map(|_| {
            let h = SymplecticLattice::new(rng.gen_range(1..=2));
            (random_observable(rng, h, 4, ORDER), random_observable(rng, h, 4, ORDER))
        })
        .collect();
    report.record(
        "commutator_is_poisson",
        first_failure(&pairs, |(p, q)| {
            let c = moyal_product(p, q, ORDER)?.sub(&moyal_product(q, p, ORDER)?)?;
            Ok(c.truncate(1).is_zero() && c.div_t().truncate(1) == poisson_bracket(p, q)?.truncate(1))
        })?,
    );
    Ok(())
}

/// Product of random elementary operations; determinant `±1`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let f = BigInt::from(rng.gen_range(-2i64..=2));
        for k in 0..n {
            let v = &m[(i, k)] + &f * &m[(j, k)];
            m[(i, k)] = v;
        }
    }
    m
}

pub fn random_word<R: Rng>(rng: &mut R, genus: usize, max_len: usize) -> Vec<Twist> {
    (0..rng.gen_range(0..=max_len))
        .map(|_| Twist {
            basis: rng.gen_range(0..2 * genus),
            inverse: rng.gen_bool(0.5),
        })
        .collect()
}

/// A cobordism whose bottom marking is onto `V`: random relations (possibly
/// torsion) and a random top marking.
pub fn random_cobordism<R: Rng>(rng: &mut R, genus: usize) -> HomologyCobordism {
    let n = 2 * genus;
    let r = rng.gen_range(0..=2);
    let mut rel = IntMatrix::zeros(n, r);
    for i in 0..n {
        for j in 0..r {
            rel[(i, j)] = rng.gen_range(-3i64..=3).into();
        }
    }
    let mut plus = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            plus[(i, j)] = rng.gen_range(-2i64..=2).into();
        }
    }
    HomologyCobordism::new(genus, rel, plus, random_unimodular(rng, n)).expect("shapes agree")
}

/// A homology cobordism presented with one redundant generator and mixed
/// coordinates; `cylinder` makes both markings agree.
pub fn random_homology_cobordism<R: Rng>(rng: &mut R, genus: usize, cylinder: bool) -> HomologyCobordism {
    let n = 2 * genus;
    let minus = random_unimodular(rng, n);
    let plus = if cylinder { minus.clone() } else { random_unimodular(rng, n) };
    // extra generator y with relation y = Σ c_i x_i
    let mut rel = IntMatrix::zeros(n + 1, 1);
    for i in 0..n {
        rel[(i, 0)] = rng.gen_range(-2i64..=2).into();
    }
    rel[(n, 0)] = (-1).into();
    let pad = |m: &IntMatrix| {
        let mut out = IntMatrix::zeros(n + 1, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = m[(i, j)].clone();
            }
        }
        out
    };
    let u = random_unimodular(rng, n + 1);
    HomologyCobordism::new(genus, u.mul(&rel), u.mul(&pad(&plus)), u.mul(&pad(&minus))).expect("shapes agree")
}

fn cobordism(rng: &mut ChaCha8Rng, config: &Config, report: &mut Report) -> Result<()> {
    let triples: Vec<_> = (0..config.cobordism_triples)
        .map(|_| {
            let g = rng.gen_range(1..=3);
            (random_cobordism(rng, g), random_cobordism(rng, g), random_cobordism(rng, g))
        })
        .collect();
    report.record(
        "unit_law",
        first_failure(&triples, |(a, _, _)| {
            let id = HomologyCobordism::identity_cylinder(a.genus());
            Ok(id.compose(a)?.equivalent(a) && a.compose(&id)?.equivalent(a))
        })?,
    );
    report.record(
        "associative",
        first_failure(&triples, |(a, b, c)| {
            let l = a.compose(b)?.compose(c)?;
            let r = a.compose(&b.compose(c)?)?;
            Ok(l.markings_generate() && l.equivalent(&r))
        })?,
    );
    let words: Vec<_> = (0..config.twist_words)
        .map(|_| {
            let g = rng.gen_range(1..=3);
            (g, random_word(rng, g, 6), random_word(rng, g, 6))
        })
        .collect();
    report.record(
        "mapping_cylinder_composition",
        first_failure(&words, |(g, w1, w2)| {
            let (f, h) = (MappingClass::twist_word(*g, w1)?, MappingClass::twist_word(*g, w2)?);
            let c = f.mapping_cylinder().compose(&h.mapping_cylinder())?;
            Ok(c.equivalent(&f.then(&h)?.mapping_cylinder()))
        })?,
    );
    report.record(
        "torelli_gives_cylinder",
        first_failure(&words, |(g, w1, w2)| {
            let f = MappingClass::twist_word(*g, w1)?;
            // w1 · w2 · w2^{-1} · w1^{-1} always lies in Torelli
            let inv = |w: &[Twist]| -> Vec<Twist> {
                w.iter()
                    .rev()
                    .map(|t| Twist {
                        basis: t.basis,
                        inverse: !t.inverse,
                    })
                    .collect()
            };
            let word: Vec<Twist> = w1.iter().chain(w2).copied().chain(inv(w2)).chain(inv(w1)).collect();
            let t = MappingClass::twist_word(*g, &word)?;
            let ok = |m: &MappingClass| !m.is_torelli() || m.mapping_cylinder().is_homology_cylinder();
            Ok(t.is_torelli() && ok(&t) && ok(&f))
        })?,
    );
    let closure: Vec<_> = (0..config.cobordism_triples)
        .map(|_| {
            let g = rng.gen_range(1..=3);
            (
                random_homology_cobordism(rng, g, false),
                random_homology_cobordism(rng, g, false),
                random_homology_cobordism(rng, g, true),
                random_homology_cobordism(rng, g, true),
            )
        })
        .collect();
    report.record(
        "homology_cobordisms_closed",
        first_failure(&closure, |(a, b, _, _)| {
            Ok(a.is_homology_cobordism() && b.is_homology_cobordism() && a.compose(b)?.is_homology_cobordism())
        })?,
    );
    report.record(
        "homology_cylinders_closed",
        first_failure(&closure, |(_, _, c, d)| {
            Ok(c.is_homology_cylinder() && d.is_homology_cylinder() && c.compose(d)?.is_homology_cylinder())
        })?,
    );
    Ok(())
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}

/// `gcd` of all `k × k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(a: &IntMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    (1..=a.nrows().min(a.ncols()))
        .map(|k| {
            let mut g = BigInt::zero();
            for rows in subsets(a.nrows(), k) {
                for cols in subsets(a.ncols(), k) {
                    g = g.gcd(&a.select_rows(&rows).select_cols(&cols).determinant());
                }
            }
            g
        })
        .collect()
}

fn smith_contract(a: &IntMatrix) -> bool {
    let s = smith_normal_form(a);
    let chain = s
        .diagonal
        .windows(2)
        .all(|w| w[1].is_multiple_of(&w[0]));
    let nonneg = s.diagonal.iter().all(|d| !d.is_negative());
    let mut prod = BigInt::one();
    let divisors_agree = determinantal_divisors(a).iter().zip(&s.diagonal).all(|(dk, d)| {
        prod *= d;
        *dk == prod
    });
    s.left.mul(a).mul(&s.right) == s.diagonal_matrix()
        && s.left.determinant().abs().is_one()
        && s.right.determinant().abs().is_one()
        && chain
        && nonneg
        && divisors_agree
}

fn smith(rng: &mut ChaCha8Rng, config: &Config, report: &mut Report) {
    let mats: Vec<IntMatrix> = (0..config.smith_matrices)
        .map(|_| random_matrix(rng, 6, 9))
        .collect();
    let bad = mats.iter().find(|a| !smith_contract(a)).map(|a| a.to_string());
    report.record("smith_contract_and_divisors", bad);
}

/// A Habiro element and a diagram combination built from the same integer
/// series `s`: `Σ s_k (1-q)^k` and `Σ s_k / W(θ)^k · θ^k`.
pub fn square_pair(series: &[i64], level: usize, w: &WeightData) -> Result<(HabiroElement, DiagramCombination)> {
    let h = IntPoly::from_i64(&[1, -1]);
    let mut p = IntPoly::zero();
    let mut power = IntPoly::one();
    let wt = weight_system(w, &JacobiDiagram::theta());
    if wt.is_zero() {
        return Err(Error::InvalidArgument(format!("W(theta) vanishes for {}", w.name())));
    }
    let mut c = DiagramCombination::zero(series.len().saturating_sub(1));
    let mut scale = rat(1);
    for (k, &s) in series.iter().enumerate() {
        p = &p + &(&power * &IntPoly::from_i64(&[s]));
        power = &power * &h;
        c.try_add_term(rat(s) / &scale, &JacobiDiagram::theta_power(k))?;
        scale *= &wt;
    }
    Ok((HabiroElement::from_poly(&p, level), c))
}

fn diagram_square(rng: &mut ChaCha8Rng, config: &Config, report: &mut Report) -> Result<()> {
    const LEVEL: usize = 5;
    let mut failure = None;
    let mut integral = None;
    for w in [WeightData::epsilon(), WeightData::sl2()] {
        for _ in 0..config.square_pairs {
            let s: Vec<i64> = (0..=LEVEL).map(|_| rng.gen_range(-5..=5)).collect();
            let (hab, comb) = square_pair(&s, LEVEL, &w)?;
            let top = hab.taylor_at_one();
            let bottom = weight_series(&w, &comb, LEVEL + 1);
            let agree = top.truncation() == bottom.truncation()
                && top
                    .coefficients()
                    .iter()
                    .zip(bottom.coefficients())
                    .all(|(a, b)| Rational::from_integer(a.clone()) == *b);
            if !agree && failure.is_none() {
                failure = Some(format!("{} {:?}", w.name(), s));
            }
            if !bottom.is_integral() && integral.is_none() {
                integral = Some(format!("{} {:?}", w.name(), s));
            }
        }
    }
    report.record("taylor_matches_weight_series", failure);
    report.record("weight_series_integral", integral);
    Ok(())
}
