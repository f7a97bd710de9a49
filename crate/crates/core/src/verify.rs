//! Property suites that compare every fast path against an independent
//! computation and report counts and counterexamples as JSON.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Side, SimpleSubset};
use crate::error::Result;
use crate::oracle;
use crate::parabolic::ConvertKind;
use crate::symplectic;
use crate::twisted::{OrbitPair, SpecAlgorithm, TwistedOrder};

const MAX_COUNTEREXAMPLES: usize = 25;

pub const SUITES: [&str; 7] = [
    "bruhat",
    "quotients",
    "howlett",
    "jinfty",
    "springer",
    "spec-order",
    "eo",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Exhaustive checks run when `|W|` is at most this; above it, sampling.
    pub exhaustive_limit: usize,
    /// Same, for the cubic lemma searches.
    pub lemma_exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 120,
            lemma_exhaustive_limit: 24,
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub system: String,
    pub passed: bool,
    pub checks: BTreeMap<String, Tally>,
    pub counterexamples: Vec<String>,
}

impl Report {
    pub fn new(suite: &str, system: String) -> Self {
        Report {
            suite: suite.to_string(),
            system,
            passed: true,
            checks: BTreeMap::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let tally = self.checks.entry(name.to_string()).or_default();
        tally.checked += 1;
        if !ok {
            tally.failed += 1;
            self.passed = false;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(format!("{name}: {}", detail()));
            }
        }
    }

    pub fn checked(&self, name: &str) -> usize {
        self.checks.get(name).map_or(0, |t| t.checked)
    }

    pub fn failures(&self) -> usize {
        self.checks.values().map(|t| t.failed).sum()
    }

    pub fn merge(&mut self, other: Report) {
        for (name, t) in other.checks {
            let mine = self.checks.entry(name).or_default();
            mine.checked += t.checked;
            mine.failed += t.failed;
        }
        self.passed &= other.passed;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn describe(sys: &CoxeterSystem) -> String {
    let mut s = format!("{}{}", sys.family(), sys.rank());
    if !sys.frobenius_is_identity() {
        let perm: Vec<String> = sys.frobenius().iter().map(|i| (i + 1).to_string()).collect();
        s.push_str(&format!(" F=[{}]", perm.join(",")));
    }
    s
}

fn ws(sys: &CoxeterSystem, x: &Element) -> String {
    sys.word_string(x)
}

/// Subsets `J` with `F(J) = J`.
pub fn frobenius_stable_subsets(sys: &CoxeterSystem) -> Vec<SimpleSubset> {
    SimpleSubset::all(sys.rank())
        .filter(|&j| sys.frobenius_subset(j) == j)
        .collect()
}

pub fn run_suite(name: &str, sys: &CoxeterSystem, opts: &VerifyOptions) -> Result<Report> {
    match name {
        "bruhat" => bruhat(sys, opts),
        "quotients" => quotients(sys),
        "howlett" => howlett(sys, opts),
        "jinfty" => jinfty(sys),
        "springer" => springer(sys),
        "spec-order" => spec_order(sys, opts),
        _ => Err(crate::Error::Precondition(format!("unknown suite {name:?}"))),
    }
}

// ---- Bruhat ---------------------------------------------------------------

/// `bruhat_leq` against the subword oracle, with order axioms and the
/// length/`w₀` identities.
pub fn bruhat(sys: &CoxeterSystem, opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new("bruhat", describe(sys));
    let all = sys.elements()?;
    let w0 = sys.w0();
    for x in all {
        r.check("length-inverse", x.length() == sys.inverse(x).length(), || ws(sys, x));
        r.check(
            "length-w0",
            sys.mul(&w0, x).length() + x.length() == w0.length(),
            || ws(sys, x),
        );
        r.check(
            "word-roundtrip",
            sys.element_from_word(&sys.canonical_word(x)).ok() == Some(*x)
                && sys.canonical_word(x).len() == sys.inversions(x),
            || ws(sys, x),
        );
        let f = sys.apply_frobenius(x);
        r.check("frobenius-length", f.length() == x.length(), || ws(sys, x));
    }
    let exhaustive = all.len() <= opts.exhaustive_limit;
    let pairs: Vec<(Element, Element)> = if exhaustive {
        all.iter()
            .flat_map(|a| all.iter().map(move |b| (*a, *b)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.samples.max(10_000))
            .map(|_| {
                let a = all[rng.gen_range(0..all.len())];
                let b = all[rng.gen_range(0..all.len())];
                // Bias half the samples toward comparable pairs.
                if rng.gen_bool(0.5) {
                    let lower: Vec<usize> = sys.canonical_word(&b);
                    let mut x = sys.identity();
                    for s in lower {
                        if rng.gen_bool(0.6) {
                            x = sys.mul_generator_right(&x, s);
                        }
                    }
                    (x, b)
                } else {
                    (a, b)
                }
            })
            .collect()
    };
    let mut intervals = std::collections::HashMap::new();
    for (a, b) in &pairs {
        let below = intervals
            .entry(*b)
            .or_insert_with(|| oracle::lower_interval(sys, b));
        let fast = sys.bruhat_leq(a, b);
        r.check("oracle-agreement", fast == below.contains(a), || {
            format!("{} ≤ {}: fast {fast}", ws(sys, a), ws(sys, b))
        });
        if fast {
            r.check(
                "length-monotone",
                a.length() < b.length() || a == b,
                || format!("{} ≤ {}", ws(sys, a), ws(sys, b)),
            );
        }
        let fa = sys.apply_frobenius(a);
        let fb = sys.apply_frobenius(b);
        r.check("frobenius-order", sys.bruhat_leq(&fa, &fb) == fast, || {
            format!("{} ≤ {}", ws(sys, a), ws(sys, b))
        });
        r.check(
            "frobenius-hom",
            sys.apply_frobenius(&sys.mul(a, b)) == sys.mul(&fa, &fb),
            || format!("{} · {}", ws(sys, a), ws(sys, b)),
        );
    }
    if exhaustive {
        let e = sys.identity();
        for a in all {
            r.check("minimum", sys.bruhat_leq(&e, a), || ws(sys, a));
            r.check("maximum", sys.bruhat_leq(a, &w0), || ws(sys, a));
            r.check("reflexive", sys.bruhat_leq(a, a), || ws(sys, a));
        }
        let leq: Vec<Vec<bool>> = all
            .iter()
            .map(|a| all.iter().map(|b| sys.bruhat_leq(a, b)).collect())
            .collect();
        let n = all.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    r.check("antisymmetric", !leq[j][i], || {
                        format!("{} {}", ws(sys, &all[i]), ws(sys, &all[j]))
                    });
                    for k in 0..n {
                        if leq[j][k] {
                            r.check("transitive", leq[i][k], || {
                                format!("{} {} {}", ws(sys, &all[i]), ws(sys, &all[j]), ws(sys, &all[k]))
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

// ---- quotients ------------------------------------------------------------

pub fn quotients(sys: &CoxeterSystem) -> Result<Report> {
    let mut r = Report::new("quotients", describe(sys));
    let all = sys.elements()?;
    let w0 = sys.w0();
    for j in SimpleSubset::all(sys.rank()) {
        let sub = sys.enumerate_subgroup(j)?;
        let reps = sys.min_coset_reps(j, Side::Left)?;
        let rep_set: HashSet<Element> = reps.iter().copied().collect();
        r.check("quotient-size", reps.len() * sub.len() == all.len(), || {
            format!("J={j}: {} reps, |W_J| = {}", reps.len(), sub.len())
        });

        for x in all {
            let c = oracle::quotient_characterizations(sys, x, j, &sub);
            r.check("four-characterizations", c.agree(), || {
                format!("J={j}, w={}: {c:?}", ws(sys, x))
            });
            r.check(
                "reps-match-filter",
                rep_set.contains(x) == c.no_left_descent,
                || format!("J={j}, w={}", ws(sys, x)),
            );
            let d = sys.decompose(x, j);
            r.check(
                "decompose",
                sys.mul(&d.u, &d.w) == *x
                    && d.u.length() + d.w.length() == x.length()
                    && sys.in_subgroup(&d.u, j)
                    && rep_set.contains(&d.w),
                || format!("J={j}, x={}", ws(sys, x)),
            );
        }

        // Each coset W_J r has r as its unique shortest element, and the
        // cosets tile W.
        let mut covered = HashSet::new();
        for rep in &reps {
            let mut shortest = true;
            for u in &sub {
                let y = sys.mul(u, rep);
                covered.insert(y);
                if !u.is_identity() && y.length() <= rep.length() {
                    shortest = false;
                }
            }
            r.check("coset-minimum", shortest, || format!("J={j}, r={}", ws(sys, rep)));
        }
        r.check("cosets-tile", covered.len() == all.len(), || format!("J={j}"));

        // Right quotient.
        let right = sys.min_coset_reps(j, Side::Right)?;
        let right_set: HashSet<Element> = right.iter().copied().collect();
        for x in all {
            r.check(
                "right-quotient",
                right_set.contains(x) == sys.in_quotient(x, j, Side::Right),
                || format!("J={j}, x={}", ws(sys, x)),
            );
        }

        // Trichotomy for w s.
        for w in &reps {
            for s in 0..sys.rank() {
                let x = sys.mul_generator_right(w, s);
                let up = x.length() > w.length();
                let in_q = rep_set.contains(&x);
                let left_mult = j
                    .iter()
                    .any(|t| sys.mul_generator_left(t, w) == x);
                let cases = [up && in_q, up && left_mult, !up && in_q];
                r.check(
                    "trichotomy",
                    cases.iter().filter(|&&c| c).count() == 1,
                    || format!("J={j}, w={}, s{}: {cases:?}", ws(sys, w), s + 1),
                );
            }
        }

        // Canonical surjection ^{J'}W → ^J W.
        for jp in SimpleSubset::all(sys.rank()).filter(|jp| jp.is_subset(j)) {
            let source = sys.min_coset_reps(jp, Side::Left)?;
            let image: HashSet<Element> = source.iter().map(|x| sys.decompose(x, j).w).collect();
            r.check("canonical-surjection", image == rep_set, || {
                format!("J'={jp}, J={j}")
            });
        }

        check_conversions(sys, &mut r, j, &reps, &right, &w0)?;

        // Root criterion on ^J W.
        for w in &reps {
            for k in SimpleSubset::all(sys.rank()) {
                r.check(
                    "root-criterion",
                    sys.refinement_contains_borel(j, k, w),
                    || format!("J={j}, K={k}, w={}", ws(sys, w)),
                );
            }
        }
    }
    Ok(r)
}

fn check_conversions(
    sys: &CoxeterSystem,
    r: &mut Report,
    j: SimpleSubset,
    reps: &[Element],
    right: &[Element],
    w0: &Element,
) -> Result<()> {
    let k = sys.opposite(j);
    let right_k: HashSet<Element> = sys.min_coset_reps(k, Side::Right)?.into_iter().collect();
    let right_j: HashSet<Element> = right.iter().copied().collect();
    let top_k = sys.w0_upper(k);

    let inv: Vec<Element> = reps
        .iter()
        .map(|x| sys.convert(x, j, ConvertKind::Inverse))
        .collect::<Result<_>>()?;
    let rev: Vec<Element> = reps
        .iter()
        .map(|x| sys.convert(x, j, ConvertKind::ReverseToWK))
        .collect::<Result<_>>()?;
    let conj: Vec<Element> = right
        .iter()
        .map(|x| sys.convert(x, j, ConvertKind::ConjugateW0))
        .collect::<Result<_>>()?;

    r.check(
        "inverse-bijection",
        inv.iter().copied().collect::<HashSet<_>>() == right_j,
        || format!("J={j}"),
    );
    r.check(
        "reverse-bijection",
        rev.iter().copied().collect::<HashSet<_>>() == right_k,
        || format!("J={j}"),
    );
    r.check(
        "conjugate-bijection",
        conj.iter().copied().collect::<HashSet<_>>() == right_k,
        || format!("J={j}"),
    );
    for (i, x) in reps.iter().enumerate() {
        r.check(
            "reverse-length",
            rev[i].length() + x.length() == top_k.length(),
            || format!("J={j}, x={}", ws(sys, x)),
        );
        r.check("inverse-length", inv[i].length() == x.length(), || ws(sys, x));
        for (i2, y) in reps.iter().enumerate() {
            let le = sys.bruhat_leq(x, y);
            r.check("inverse-order", sys.bruhat_leq(&inv[i], &inv[i2]) == le, || {
                format!("J={j}, {} {}", ws(sys, x), ws(sys, y))
            });
            r.check("reverse-order", sys.bruhat_leq(&rev[i2], &rev[i]) == le, || {
                format!("J={j}, {} {}", ws(sys, x), ws(sys, y))
            });
        }
    }
    for (i, x) in right.iter().enumerate() {
        r.check(
            "conjugate-length",
            conj[i].length() == x.length() && conj[i] == sys.mul3(w0, x, w0),
            || ws(sys, x),
        );
        for (i2, y) in right.iter().enumerate() {
            r.check(
                "conjugate-order",
                sys.bruhat_leq(&conj[i], &conj[i2]) == sys.bruhat_leq(x, y),
                || format!("J={j}, {} {}", ws(sys, x), ws(sys, y)),
            );
        }
    }
    Ok(())
}

// ---- Howlett --------------------------------------------------------------

/// Checks one `(J, K, w)`; the uniqueness search runs over `u ∈ W_J` and
/// `w̄ ∈ ^J W^K` with `v = w̄⁻¹ u⁻¹ w` forced.
pub fn howlett_case(
    sys: &CoxeterSystem,
    r: &mut Report,
    j: SimpleSubset,
    k: SimpleSubset,
    w: &Element,
    sub_j: &[Element],
    double: &[Element],
) {
    let ctx = || format!("J={j}, K={k}, w={}", ws(sys, w));
    let h = sys.howlett_decompose(w, j, k);
    let v_ok = sys.in_subgroup(&h.v, k) && sys.in_quotient(&h.v, h.k_prime, Side::Left);
    r.check(
        "howlett-factorization",
        sys.mul3(&h.u, &h.wbar, &h.v) == *w
            && sys.in_subgroup(&h.u, j)
            && sys.in_double_quotient(&h.wbar, j, k)
            && v_ok
            && h.k_prime == sys.pullback_subset(&h.wbar, k, j),
        ctx,
    );
    r.check(
        "howlett-length",
        h.u.length() + h.wbar.length() + h.v.length() == w.length(),
        ctx,
    );
    r.check(
        "howlett-tail-in-quotient",
        sys.in_quotient(&sys.mul(&h.wbar, &h.v), j, Side::Left),
        ctx,
    );

    let mut found = Vec::new();
    for u in sub_j {
        let uinv_w = sys.mul(&sys.inverse(u), w);
        for wbar in double {
            let v = sys.mul(&sys.inverse(wbar), &uinv_w);
            if !sys.in_subgroup(&v, k) {
                continue;
            }
            let kp = sys.pullback_subset(wbar, k, j);
            if sys.in_quotient(&v, kp, Side::Left)
                && u.length() + wbar.length() + v.length() == w.length()
            {
                found.push((*u, *wbar, v));
            }
        }
    }
    r.check(
        "howlett-unique",
        found.len() == 1 && found[0] == (h.u, h.wbar, h.v),
        || format!("{}: {} factorizations", ctx(), found.len()),
    );

    // w̄ b with b the W_K-part of w lies in w̄ W_K.
    let (_, b) = sys.decompose_right(w, k);
    let w2 = sys.mul(&h.wbar, &b);
    let variant = sys.howlett_variant_check(&w2, &h.wbar, j, k);
    r.check("howlett-variant", matches!(variant, Ok(true)), || {
        format!("J={j}, K={k}, w={}: {variant:?}", ws(sys, &w2))
    });
}

pub fn howlett(sys: &CoxeterSystem, opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new("howlett", describe(sys));
    let all = sys.elements()?;
    let subsets: Vec<SimpleSubset> = SimpleSubset::all(sys.rank()).collect();
    let setup = |j: SimpleSubset, k: SimpleSubset| -> Result<(Vec<Element>, Vec<Element>)> {
        Ok((sys.enumerate_subgroup(j)?, sys.double_reps(j, k)?))
    };
    if all.len() <= 48 {
        for &j in &subsets {
            for &k in &subsets {
                let (sub, double) = setup(j, k)?;
                for w in all {
                    howlett_case(sys, &mut r, j, k, w, &sub, &double);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut cache = std::collections::HashMap::new();
        for _ in 0..opts.samples {
            let j = subsets[rng.gen_range(0..subsets.len())];
            let k = subsets[rng.gen_range(0..subsets.len())];
            let w = all[rng.gen_range(0..all.len())];
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((j, k)) {
                e.insert(setup(j, k)?);
            }
            let (sub, double) = &cache[&(j, k)];
            howlett_case(sys, &mut r, j, k, &w, sub, double);
        }
    }
    Ok(r)
}

// ---- J_∞ ------------------------------------------------------------------

pub fn jinfty(sys: &CoxeterSystem) -> Result<Report> {
    let mut r = Report::new("jinfty", describe(sys));
    for j in SimpleSubset::all(sys.rank()) {
        for w in sys.min_coset_reps(j, Side::Left)? {
            let ctx = || format!("J={j}, w={}", ws(sys, &w));
            let direct = sys.j_infinity(&w, j);
            let seq = sys.orbit_type_sequence(&w, j);
            let (Ok((ji, ki)), Ok(seq)) = (direct, seq) else {
                r.check("computes", false, ctx);
                continue;
            };
            r.check("j-infinity-agrees", seq.j_infinity() == ji, ctx);
            r.check("k-infinity-agrees", seq.k_infinity() == ki, ctx);
            r.check("y-infinity-is-w", seq.y_infinity() == w, ctx);
            let monotone = seq.trace.windows(2).all(|p| {
                p[1].0.is_subset(p[0].0) && p[1].1.is_subset(p[0].1)
            });
            r.check("sequence-monotone", monotone, ctx);
            r.check(
                "j-infinity-fixed",
                sys.conjugate_subset(&sys.mul(&w, &sys.w0_upper(j)), ji) == Some(ji),
                ctx,
            );
        }
    }
    Ok(r)
}

// ---- Springer ---------------------------------------------------------------

pub fn springer(sys: &CoxeterSystem) -> Result<Report> {
    let mut r = Report::new("springer", describe(sys));
    let all = sys.elements()?;
    for j in frobenius_stable_subsets(sys) {
        let t = TwistedOrder::new(sys, j)?;
        let right = sys.min_coset_reps(j, Side::Right)?;

        // Orbit equality: classes have |W_J| members and one label with x ∈ W^J.
        let sub = t.subgroup();
        let mut canon = HashSet::new();
        for x in all {
            for w in all {
                let p = OrbitPair { x: *x, w: *w };
                let (xr, xu) = sys.decompose_right(x, j);
                // x = xr·xu, and x F(u)⁻¹ = xr needs F(u) = xu.
                let u = sub
                    .iter()
                    .find(|u| sys.apply_frobenius(u) == xu)
                    .copied()
                    .expect("F permutes W_J");
                let q = OrbitPair {
                    x: xr,
                    w: sys.mul(w, &sys.inverse(&u)),
                };
                r.check("orbit-canonical-label", t.springer_orbit_equal(&p, &q), || {
                    format!("J={j}, ({}, {})", ws(sys, x), ws(sys, w))
                });
                canon.insert(q);
            }
        }
        r.check(
            "orbit-class-count",
            canon.len() * sub.len() == all.len() * all.len() && canon.len() == right.len() * all.len(),
            || format!("J={j}: {} classes", canon.len()),
        );
        if let Some(p) = canon.iter().next() {
            let class: Vec<OrbitPair> = sub
                .iter()
                .map(|u| OrbitPair {
                    x: sys.mul(&p.x, &sys.inverse(&sys.apply_frobenius(u))),
                    w: sys.mul(&p.w, &sys.inverse(u)),
                })
                .collect();
            let members = all
                .iter()
                .flat_map(|x| all.iter().map(move |w| OrbitPair { x: *x, w: *w }))
                .filter(|q| t.springer_orbit_equal(p, q))
                .count();
            r.check(
                "orbit-class-generated",
                members == class.iter().collect::<HashSet<_>>().len(),
                || format!("J={j}"),
            );
        }

        // Closure relation on labels with x ∈ W^J.
        let labels: Vec<OrbitPair> = right
            .iter()
            .flat_map(|x| all.iter().map(move |w| OrbitPair { x: *x, w: *w }))
            .collect();
        let n = labels.len();
        let rel: Vec<Vec<bool>> = labels
            .iter()
            .map(|p| {
                labels
                    .iter()
                    .map(|q| t.springer_orbit_in_closure(p, q).unwrap_or(false))
                    .collect()
            })
            .collect();
        for i in 0..n {
            r.check("closure-reflexive", rel[i][i], || format!("J={j}, {:?}", labels[i]));
            for k in 0..n {
                if !rel[i][k] {
                    continue;
                }
                for l in 0..n {
                    if rel[k][l] {
                        r.check("closure-transitive", rel[i][l], || {
                            format!("J={j}, {i} {k} {l}")
                        });
                    }
                }
            }
        }

        // Against the Bruhat cone, where both labels lie in W^J.
        let top = sys.w0_upper(j);
        let e = sys.identity();
        let admissible: Vec<Element> = all
            .iter()
            .filter(|x| sys.in_quotient(&sys.mul(x, &top), j, Side::Right))
            .copied()
            .collect();
        for w in &admissible {
            let cone: HashSet<Element> = t.sigma_closure(w)?.into_iter().collect();
            for x in &admissible {
                let p = OrbitPair { x: sys.mul(w, &top), w: e };
                let q = OrbitPair { x: sys.mul(x, &top), w: e };
                let springer = t.springer_orbit_in_closure(&p, &q)?;
                r.check("sigma-closure-agrees", springer == cone.contains(x), || {
                    format!("J={j}, w={}, x={}", ws(sys, w), ws(sys, x))
                });
            }
        }
    }
    Ok(r)
}

// ---- the order ⪯ ----------------------------------------------------------

/// Three-oracle agreement and the poset axioms for one `(J, δ)`.
pub fn spec_order_relation(t: &TwistedOrder, r: &mut Report) -> Result<()> {
    let sys = t.system();
    let j = t.j();
    let reps = t.quotient()?;
    let n = reps.len();
    let mats: Vec<Vec<Vec<bool>>> = SpecAlgorithm::ALL
        .iter()
        .map(|&a| t.relation_matrix(&reps, a))
        .collect();
    let m = &mats[1];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (&reps[a], &reps[b]);
            let ctx = || format!("J={j}, {} vs {}", ws(sys, x), ws(sys, y));
            r.check(
                "three-oracle",
                mats[0][a][b] == m[a][b] && mats[2][a][b] == m[a][b],
                || format!("{}: naive {} bfs {} pair {}", ctx(), mats[0][a][b], m[a][b], mats[2][a][b]),
            );
            if sys.bruhat_leq(x, y) {
                r.check("bruhat-implies-spec", m[a][b], ctx);
            }
            if m[a][b] {
                r.check("spec-length-monotone", x.length() <= y.length(), ctx);
            }
            r.check(
                "lengthequal",
                !(x != y && x.length() == y.length() && m[a][b]),
                ctx,
            );
        }
    }
    let poset = crate::poset::Poset::from_matrix(reps.clone(), m);
    r.check("partial-order", poset.is_ok(), || {
        format!("J={j}: {:?}", poset.as_ref().err())
    });
    if j.is_empty() {
        for a in 0..n {
            for b in 0..n {
                r.check("empty-j-is-bruhat", m[a][b] == sys.bruhat_leq(&reps[a], &reps[b]), || {
                    format!("{} {}", ws(sys, &reps[a]), ws(sys, &reps[b]))
                });
            }
        }
    }
    if j == sys.all_generators() {
        r.check("full-j-singleton", n == 1, || format!("{n} elements"));
    }
    Ok(())
}

fn sample_indices(n: usize, limit: usize, rng: &mut ChaCha8Rng, exhaustive: bool) -> Vec<usize> {
    if exhaustive {
        (0..n).collect()
    } else {
        (0..limit.min(n.max(1))).map(|_| rng.gen_range(0..n)).collect()
    }
}

/// Lemma witnesses that depend only on `W`.
pub fn bruhat_lemmas(sys: &CoxeterSystem, r: &mut Report, opts: &VerifyOptions) -> Result<()> {
    let all = sys.elements()?;
    let exhaustive = all.len() <= opts.lemma_exhaustive_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x4c);
    let pick = |rng: &mut ChaCha8Rng| all[rng.gen_range(0..all.len())];

    let pairs: Vec<(Element, Element)> = if exhaustive {
        all.iter().flat_map(|a| all.iter().map(move |b| (*a, *b))).collect()
    } else {
        (0..opts.samples).map(|_| (pick(&mut rng), pick(&mut rng))).collect()
    };
    for (w, x) in &pairs {
        let ctx = || format!("w={}, x={}", ws(sys, w), ws(sys, x));
        match sys.ymin_ymax(w, x) {
            Ok((lo, hi)) => {
                let wlo = sys.mul(w, &lo);
                let whi = sys.mul(w, &hi);
                r.check(
                    "ymin-ymax-lengths",
                    lo.length() + wlo.length() == w.length()
                        && hi.length() == w.length() + whi.length(),
                    ctx,
                );
            }
            Err(e) => r.check("ymin-ymax-exists", false, || format!("{}: {e}", ctx())),
        }
    }

    let triples: Vec<(Element, Element, Element)> = if exhaustive {
        let mut out = Vec::new();
        for x in all {
            for w in all {
                for w2 in all {
                    if sys.bruhat_leq(w, w2) {
                        out.push((*x, *w, *w2));
                    }
                }
            }
        }
        out
    } else {
        (0..opts.samples)
            .map(|_| {
                let w2 = pick(&mut rng);
                let below = sys.lower_cone(&w2).unwrap_or_default();
                let w = below[rng.gen_range(0..below.len())];
                (pick(&mut rng), w, w2)
            })
            .collect()
    };
    for (x2, w, w2) in &triples {
        for variant in [1u8, 2] {
            let res = sys.bruhat_witness_lemmas(x2, w, w2, variant);
            let ok = match &res {
                Ok(x) => {
                    sys.bruhat_leq(x, x2)
                        && if variant == 1 {
                            sys.bruhat_leq(&sys.mul(x, w), &sys.mul(x2, w2))
                        } else {
                            sys.bruhat_leq(&sys.mul(x2, w), &sys.mul(x, w2))
                        }
                }
                Err(_) => false,
            };
            r.check("bruhat-two-witness", ok, || {
                format!("x'={}, w={}, w'={}, variant {variant}: {res:?}", ws(sys, x2), ws(sys, w), ws(sys, w2))
            });
        }
    }
    Ok(())
}

/// Lemma witnesses depending on `(J, δ)`.
pub fn twisted_lemmas(t: &TwistedOrder, r: &mut Report, opts: &VerifyOptions) -> Result<()> {
    let sys = t.system();
    let j = t.j();
    let all = sys.elements()?;
    let exhaustive = all.len() <= opts.lemma_exhaustive_limit;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (j.bits() as u64) << 8);
    let reps = t.quotient()?;
    let sub = t.subgroup();

    // Lifting: x ∈ ^J W, u with ℓ(xu) additive, u'₁ ≤ u'.
    for xi in sample_indices(reps.len(), opts.samples / 4 + 1, &mut rng, exhaustive) {
        let x = reps[xi];
        for ui in sample_indices(all.len(), 4, &mut rng, exhaustive) {
            let u = all[ui];
            let xu = sys.mul(&x, &u);
            if xu.length() != x.length() + u.length() {
                continue;
            }
            let d = sys.decompose(&xu, j);
            for u1 in sys.lower_cone(&d.u)? {
                let res = sys.bruhat_lifting_witness(&x, &u, &u1, j);
                let ok = matches!(&res, Ok(v) if sys.bruhat_leq(v, &u) && sys.mul(&x, v) == sys.mul(&u1, &d.w));
                r.check("lifting-witness", ok, || {
                    format!("J={j}, x={}, u={}, u1'={}: {res:?}", ws(sys, &x), ws(sys, &u), ws(sys, &u1))
                });
            }
        }
    }

    // Reduced twisted paths, and the (u, v) criterion.
    let vu: Vec<(Element, Element)> = sub
        .iter()
        .flat_map(|u| sub.iter().filter(|v| sys.bruhat_leq(v, u)).map(move |v| (*u, *v)))
        .collect();
    for wi in sample_indices(reps.len(), opts.samples / 4 + 1, &mut rng, exhaustive) {
        let w = reps[wi];
        for pi in sample_indices(vu.len(), 4, &mut rng, exhaustive) {
            let (u, v) = vu[pi];
            let res = t.bruhatfour_witness(&w, &u, &v);
            let ok = match &res {
                Ok((x, word)) => {
                    let mut y = w;
                    let mut prefix = sys.identity();
                    let mut lengths_ok = true;
                    for &s in word {
                        prefix = sys.mul_generator_right(&prefix, s);
                        y = sys.mul3(&sys.generator(s), &y, &t.delta(&sys.generator(s)));
                        lengths_ok &= y.length() == w.length();
                    }
                    let target = sys.mul3(&sys.inverse(&u), &w, &t.delta(&v));
                    prefix == *x
                        && word.len() == x.length()
                        && lengths_ok
                        && sys.bruhat_leq(x, &v)
                        && sys.bruhat_leq(&t.twisted_conjugate(x, &w), &target)
                }
                Err(_) => false,
            };
            r.check("bruhatfour-witness", ok, || {
                format!("J={j}, w={}, u={}, v={}: {res:?}", ws(sys, &w), ws(sys, &u), ws(sys, &v))
            });
            for w2i in sample_indices(reps.len(), 2, &mut rng, exhaustive) {
                let w2 = reps[w2i];
                if let Ok(true) = t.spec_coroll_check(&w, &w2, &u, &v) {
                    r.check("coroll-implies-spec", t.spec_leq_naive(&w2, &w), || {
                        format!("J={j}, w={}, w'={}, u={}, v={}", ws(sys, &w), ws(sys, &w2), ws(sys, &u), ws(sys, &v))
                    });
                }
            }
        }
    }

    // Two-sided witnesses for w ⪯ w'.
    for wi in sample_indices(reps.len(), opts.samples / 4 + 1, &mut rng, exhaustive) {
        for w2i in sample_indices(reps.len(), 4, &mut rng, exhaustive) {
            let (w, w2) = (reps[wi], reps[w2i]);
            if !t.spec_leq_bfs(&w, &w2) {
                continue;
            }
            let res = t.lemma_spec1_witness(&w, &w2);
            let ok = match &res {
                Ok((u, u2)) => {
                    let w1 = sys.mul(
                        &sys.mul3(u2, &w2, &sys.inverse(&t.delta(u2))),
                        &t.delta(u),
                    );
                    sys.in_quotient(&w1, j, Side::Left) && sys.bruhat_leq(&sys.mul(u, &w), &w1)
                }
                Err(_) => false,
            };
            r.check("spec1-witness", ok, || {
                format!("J={j}, w={}, w'={}: {res:?}", ws(sys, &w), ws(sys, &w2))
            });
        }
    }
    Ok(())
}

/// Every `J` fixed by `F`: three-oracle agreement, axioms, closure sets,
/// `δ` properties and the lemma witnesses.
pub fn spec_order(sys: &CoxeterSystem, opts: &VerifyOptions) -> Result<Report> {
    let mut r = Report::new("spec-order", describe(sys));
    bruhat_lemmas(sys, &mut r, opts)?;
    for j in frobenius_stable_subsets(sys) {
        let t = TwistedOrder::new(sys, j)?;
        r.check("delta-order-preserving", t.delta_preserves_order(), || format!("J={j}"));
        r.check(
            "delta-generators",
            j.iter().all(|s| {
                t.delta_generator(s)
                    .is_some_and(|d| t.delta(&sys.generator(s)) == sys.generator(d))
            }),
            || format!("J={j}"),
        );
        spec_order_relation(&t, &mut r)?;
        if sys.rank() <= 4 {
            let reps = t.quotient()?;
            let poset = t.spec_poset()?;
            for (b, w) in reps.iter().enumerate() {
                let closure: Vec<Element> = t.closure_set(w)?;
                let cone: Vec<Element> = poset.down_set(b).iter().map(|&a| reps[a]).collect();
                r.check("closure-set-is-cone", closure == cone, || {
                    format!("J={j}, w={}", ws(sys, w))
                });
            }
        }
        twisted_lemmas(&t, &mut r, opts)?;
    }
    Ok(r)
}

// ---- Ekedahl-Oort ----------------------------------------------------------

pub fn eo(g: usize) -> Result<Report> {
    let mut r = Report::new("eo", format!("C{g}"));
    let (sys, j) = symplectic::build_symplectic(g)?;
    let all = sys.elements()?;
    let factorial: usize = (1..=g).product();
    r.check("order", all.len() == (1 << g) * factorial, || format!("|W| = {}", all.len()));
    let t = TwistedOrder::new(&sys, j)?;
    r.check("subgroup-order", t.subgroup().len() == factorial, || {
        format!("|W_J| = {}", t.subgroup().len())
    });
    let reps = t.quotient()?;
    r.check("quotient-order", reps.len() == 1 << g, || format!("|^JW| = {}", reps.len()));

    for x in all {
        let view = symplectic::perm_view(&sys, x)?;
        r.check(
            "view-roundtrip",
            symplectic::element_of_view(&sys, &view).ok() == Some(*x),
            || ws(&sys, x),
        );
    }
    let w0v = symplectic::perm_view(&sys, &sys.w0())?;
    r.check(
        "w0-reverses",
        w0v.images().iter().enumerate().all(|(i, &v)| v == 2 * g - i),
        || format!("{:?}", w0v.images()),
    );
    let w0 = sys.w0();
    r.check(
        "w0-central",
        sys.generators().iter().all(|s| sys.mul(s, &w0) == sys.mul(&w0, s)),
        String::new,
    );
    let wj = symplectic::perm_view(&sys, &sys.longest_element(j))?;
    r.check(
        "w0J-reverses-first-half",
        (1..=g).all(|i| wj.image(i) == g + 1 - i),
        || format!("{:?}", wj.images()),
    );

    // δ is conjugation by w_{0,J}.
    let w0j = sys.longest_element(j);
    for u in t.subgroup() {
        r.check("delta-is-w0J-conjugation", t.delta(u) == sys.mul3(&w0j, u, &w0j), || {
            ws(&sys, u)
        });
    }

    let rep_set: HashSet<Element> = reps.iter().copied().collect();
    for eps in symplectic::EpsTuple::all(g) {
        let x = symplectic::element_of_eps(&sys, &eps)?;
        r.check("eps-in-quotient", rep_set.contains(&x), || eps.to_string());
        r.check("eps-length", x.length() == eps.dimension(), || eps.to_string());
        r.check(
            "eps-roundtrip",
            symplectic::eps_of(&sys, &x).ok().as_ref() == Some(&eps),
            || eps.to_string(),
        );
    }
    if g <= 4 {
        for a in &reps {
            for b in &reps {
                r.check(
                    "coordinatewise-bruhat",
                    symplectic::jw_bruhat(&sys, a, b)? == sys.bruhat_leq(a, b),
                    || format!("{} {}", ws(&sys, a), ws(&sys, b)),
                );
            }
        }
    }
    spec_order_relation(&t, &mut r)?;

    let poset = symplectic::eo_poset(g)?;
    let labels = poset.labels();
    let min = poset.minimal();
    let max = poset.maximal();
    r.check(
        "unique-minimum",
        min.len() == 1 && labels[min[0]].eps.bits().iter().all(|&e| e == 0) && labels[min[0]].dimension == 0,
        || format!("{min:?}"),
    );
    r.check(
        "unique-maximum",
        max.len() == 1
            && labels[max[0]].eps.bits().iter().all(|&e| e == 1)
            && labels[max[0]].dimension == g * (g + 1) / 2,
        || format!("{max:?}"),
    );
    for a in 0..poset.len() {
        for b in 0..poset.len() {
            if poset.leq(a, b) {
                r.check("graded", labels[a].dimension <= labels[b].dimension, || {
                    format!("{} {}", labels[a].eps, labels[b].eps)
                });
            }
            if sys.bruhat_leq(&labels[a].element, &labels[b].element) {
                r.check("bruhat-subrelation", poset.leq(a, b), || {
                    format!("{} {}", labels[a].eps, labels[b].eps)
                });
            }
        }
    }
    Ok(r)
}
