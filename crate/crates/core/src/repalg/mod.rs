//! Representation expressions and their exact Satake-exponent semantics.
//!
//! An expression is built from `zeta`, symmetric powers of named base forms,
//! tensor products and isobaric sums. Its meaning is a multiset of integer
//! exponent vectors (one coordinate per base form): `zeta` is the zero
//! vector, `Sym^m` contributes `{2i - m : 0 <= i <= m}`, tensor products take
//! pairwise vector sums and isobaric sums take multiset unions. Identity
//! checks in this module are exact integer combinatorics with no floating
//! point anywhere.

mod parse;

pub use parse::parse_rep;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::qseries::HoloForm;

/// A base form an expression can reference.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormId {
    Holo(HoloForm),
    /// Maass dataset id (the part after `maass:`).
    Maass(String),
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::Holo(h) => write!(f, "{}", h.name()),
            FormId::Maass(id) => write!(f, "maass:{id}"),
        }
    }
}

impl FormId {
    pub fn parse(s: &str, maass_ids: &BTreeSet<String>) -> Option<FormId> {
        if let Some(h) = HoloForm::from_name(s) {
            return Some(FormId::Holo(h));
        }
        if let Some(rest) = s.strip_prefix("maass:") {
            if maass_ids.contains(rest) {
                return Some(FormId::Maass(rest.to_string()));
            }
        }
        None
    }
}

/// Abstract syntax of a representation expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepExpr {
    Zeta,
    Sym { m: u32, form: FormId },
    Tensor(Box<RepExpr>, Box<RepExpr>),
    Isobaric(Box<RepExpr>, Box<RepExpr>),
}

impl RepExpr {
    pub fn sym(m: u32, form: FormId) -> RepExpr {
        RepExpr::Sym { m, form }
    }

    pub fn tensor(a: RepExpr, b: RepExpr) -> RepExpr {
        RepExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn isobaric(a: RepExpr, b: RepExpr) -> RepExpr {
        RepExpr::Isobaric(Box::new(a), Box::new(b))
    }

    /// Degree of the associated L-function: products multiply, sums add,
    /// `Sym^m` has degree m+1.
    pub fn degree(&self) -> u64 {
        match self {
            RepExpr::Zeta => 1,
            RepExpr::Sym { m, .. } => u64::from(*m) + 1,
            RepExpr::Tensor(a, b) => a.degree() * b.degree(),
            RepExpr::Isobaric(a, b) => a.degree() + b.degree(),
        }
    }

    /// Distinct base forms referenced anywhere in the expression.
    pub fn base_forms(&self) -> BTreeSet<FormId> {
        let mut out = BTreeSet::new();
        self.collect_forms(&mut out);
        out
    }

    fn collect_forms(&self, out: &mut BTreeSet<FormId>) {
        match self {
            RepExpr::Zeta => {}
            RepExpr::Sym { form, .. } => {
                out.insert(form.clone());
            }
            RepExpr::Tensor(a, b) | RepExpr::Isobaric(a, b) => {
                a.collect_forms(out);
                b.collect_forms(out);
            }
        }
    }
}

impl fmt::Display for RepExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // tensor binds tighter than (+); parenthesize isobaric children of
        // tensor nodes so the output re-parses to the same tree shape
        fn prod(e: &RepExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                RepExpr::Isobaric(..) => write!(f, "({e})"),
                _ => write!(f, "{e}"),
            }
        }
        match self {
            RepExpr::Zeta => write!(f, "zeta"),
            RepExpr::Sym { m, form } => write!(f, "sym{m}({form})"),
            RepExpr::Tensor(a, b) => {
                prod(a, f)?;
                write!(f, " x ")?;
                prod(b, f)
            }
            RepExpr::Isobaric(a, b) => write!(f, "{a} (+) {b}"),
        }
    }
}

/// Exact multiset of Satake exponent vectors over an ordered base form list.
///
/// Canonical form: base forms sorted and deduplicated, all-zero coordinates
/// pruned, entries sorted with run-length multiplicities. Equality is
/// therefore plain structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMultiset {
    base: Vec<FormId>,
    entries: Vec<(Vec<i32>, u64)>,
}

/// Exponent vectors with multiplicities, aligned to a base form list.
type Entries = Vec<(Vec<i32>, u64)>;

impl ExponentMultiset {
    fn from_map(base: Vec<FormId>, map: BTreeMap<Vec<i32>, u64>) -> Self {
        let mut ms = ExponentMultiset {
            base,
            entries: map.into_iter().collect(),
        };
        ms.prune_zero_columns();
        ms
    }

    fn zeta() -> Self {
        ExponentMultiset {
            base: Vec::new(),
            entries: vec![(Vec::new(), 1)],
        }
    }

    fn sym(m: u32, form: &FormId) -> Self {
        let m = m as i32;
        let mut map = BTreeMap::new();
        for i in 0..=m {
            *map.entry(vec![2 * i - m]).or_insert(0) += 1;
        }
        Self::from_map(vec![form.clone()], map)
    }

    pub fn base_forms(&self) -> &[FormId] {
        &self.base
    }

    pub fn entries(&self) -> &[(Vec<i32>, u64)] {
        &self.entries
    }

    /// Multiset cardinality (the degree d of the representation).
    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    /// True if the multiset is invariant under v -> -v.
    pub fn is_self_dual(&self) -> bool {
        let map: BTreeMap<&[i32], u64> = self
            .entries
            .iter()
            .map(|(v, c)| (v.as_slice(), *c))
            .collect();
        self.entries.iter().all(|(v, c)| {
            let neg: Vec<i32> = v.iter().map(|x| -x).collect();
            map.get(neg.as_slice()) == Some(c)
        })
    }

    fn prune_zero_columns(&mut self) {
        let dim = self.base.len();
        let keep: Vec<usize> = (0..dim)
            .filter(|&j| self.entries.iter().any(|(v, _)| v[j] != 0))
            .collect();
        if keep.len() == dim {
            return;
        }
        self.base = keep.iter().map(|&j| self.base[j].clone()).collect();
        let mut map = BTreeMap::new();
        for (v, c) in &self.entries {
            let nv: Vec<i32> = keep.iter().map(|&j| v[j]).collect();
            *map.entry(nv).or_insert(0) += c;
        }
        self.entries = map.into_iter().collect();
    }

    /// Remap both operands onto the union of their base form lists.
    fn aligned(&self, other: &Self) -> (Vec<FormId>, Entries, Entries) {
        let mut base: Vec<FormId> = self
            .base
            .iter()
            .chain(other.base.iter())
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        base.sort();
        let embed = |ms: &Self| -> Entries {
            let pos: Vec<usize> = ms
                .base
                .iter()
                .map(|f| base.iter().position(|b| b == f).unwrap())
                .collect();
            ms.entries
                .iter()
                .map(|(v, c)| {
                    let mut nv = vec![0i32; base.len()];
                    for (j, &x) in v.iter().enumerate() {
                        nv[pos[j]] = x;
                    }
                    (nv, *c)
                })
                .collect()
        };
        let a = embed(self);
        let b = embed(other);
        (base, a, b)
    }

    /// Pairwise vector sums with multiplicity products (tensor semantics).
    pub fn tensor(&self, other: &Self) -> Self {
        let (base, a, b) = self.aligned(other);
        let mut map = BTreeMap::new();
        for (va, ca) in &a {
            for (vb, cb) in &b {
                let sum: Vec<i32> = va.iter().zip(vb).map(|(x, y)| x + y).collect();
                *map.entry(sum).or_insert(0) += ca * cb;
            }
        }
        Self::from_map(base, map)
    }

    /// Multiset union (isobaric semantics).
    pub fn union(&self, other: &Self) -> Self {
        let (base, a, b) = self.aligned(other);
        let mut map = BTreeMap::new();
        for (v, c) in a.into_iter().chain(b) {
            *map.entry(v).or_insert(0) += c;
        }
        Self::from_map(base, map)
    }

    /// Union of `k` copies of `self`.
    pub fn repeated(&self, k: u64) -> Self {
        let mut ms = self.clone();
        for (_, c) in ms.entries.iter_mut() {
            *c *= k;
        }
        ms
    }
}

/// Exact exponent-multiset semantics of an expression.
pub fn exponents(e: &RepExpr) -> ExponentMultiset {
    match e {
        RepExpr::Zeta => ExponentMultiset::zeta(),
        RepExpr::Sym { m, form } => ExponentMultiset::sym(*m, form),
        RepExpr::Tensor(a, b) => exponents(a).tensor(&exponents(b)),
        RepExpr::Isobaric(a, b) => exponents(a).union(&exponents(b)),
    }
}

fn probe_form() -> FormId {
    FormId::Holo(HoloForm::F12)
}

/// Exact check of `Sym^m x Sym^{m+r} = (+)_{i=0..m} Sym^{2i+r}` for one form.
pub fn check_decomposition(m: u32, r: u32) -> bool {
    let f = probe_form();
    let lhs = exponents(&RepExpr::tensor(
        RepExpr::sym(m, f.clone()),
        RepExpr::sym(m + r, f.clone()),
    ));
    let mut rhs = ExponentMultiset::sym(r, &f);
    for i in 1..=m {
        rhs = rhs.union(&ExponentMultiset::sym(2 * i + r, &f));
    }
    lhs == rhs
}

/// One named exact identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub lhs_degree: u64,
    pub rhs_degree: u64,
}

impl IdentityCheck {
    fn run(name: &str, lhs: &ExponentMultiset, rhs: &ExponentMultiset) -> Self {
        IdentityCheck {
            name: name.to_string(),
            pass: lhs == rhs,
            lhs_degree: lhs.degree(),
            rhs_degree: rhs.degree(),
        }
    }
}

/// The tensor-power identities behind the fourth- and sixth-moment
/// computations, checked as exact exponent-multiset equalities for a
/// degree-2 standard representation `sigma = Sym^1`.
pub fn check_power_identities() -> Vec<IdentityCheck> {
    let f = probe_form();
    let sigma = ExponentMultiset::sym(1, &f);
    let zeta = ExponentMultiset::zeta();
    let sym2 = ExponentMultiset::sym(2, &f);
    let sym3 = ExponentMultiset::sym(3, &f);
    let sym4 = ExponentMultiset::sym(4, &f);

    let sq = sigma.tensor(&sigma);
    let p4 = sq.tensor(&sq);
    let p6 = p4.tensor(&sq);

    let rhs2 = zeta.union(&sym2);
    let rhs4 = zeta.repeated(2).union(&sym2.repeated(3)).union(&sym4);
    let s2xs4 = sym2.tensor(&sym4);
    let rhs6 = zeta
        .repeated(5)
        .union(&sym2.repeated(8))
        .union(&sym4.repeated(4))
        .union(&s2xs4);
    let rhs33 = zeta.union(&s2xs4);

    vec![
        IdentityCheck::run("sigma^x2 = zeta (+) sym2", &sq, &rhs2),
        IdentityCheck::run("sigma^x4 = 2 zeta (+) 3 sym2 (+) sym4", &p4, &rhs4),
        IdentityCheck::run(
            "sigma^x6 = 5 zeta (+) 8 sym2 (+) 4 sym4 (+) sym2 x sym4",
            &p6,
            &rhs6,
        ),
        IdentityCheck::run("sym3 x sym3 = zeta (+) sym2 x sym4", &sym3.tensor(&sym3), &rhs33),
    ]
}

fn sym_atom(m: u32, form: &FormId) -> RepExpr {
    if m == 0 {
        RepExpr::Zeta
    } else {
        RepExpr::sym(m, form.clone())
    }
}

fn tensor_term(m1: u32, f: &FormId, m2: u32, g: &FormId) -> RepExpr {
    match (m1, m2) {
        (0, 0) => RepExpr::Zeta,
        (_, 0) => sym_atom(m1, f),
        (0, _) => sym_atom(m2, g),
        _ => RepExpr::tensor(sym_atom(m1, f), sym_atom(m2, g)),
    }
}

fn isobaric_fold(terms: Vec<RepExpr>) -> RepExpr {
    let mut it = terms.into_iter();
    let first = it.next().expect("at least one isobaric term");
    it.fold(first, RepExpr::isobaric)
}

/// Isobaric decomposition of `pi x pi` for `pi = Sym^{m1}(f) x Sym^{m2}(g)`:
/// the sum of `Sym^{2i}(f) x Sym^{2j}(g)` over `0 <= i <= m1, 0 <= j <= m2`.
pub fn pi_times_pi_decomposition(m1: u32, m2: u32, f: &FormId, g: &FormId) -> RepExpr {
    let mut terms = Vec::new();
    for i in 0..=m1 {
        for j in 0..=m2 {
            terms.push(tensor_term(2 * i, f, 2 * j, g));
        }
    }
    isobaric_fold(terms)
}

/// Isobaric decomposition of the fourth tensor power of `pi`.
pub fn pi_fourth_decomposition(m1: u32, m2: u32, f: &FormId, g: &FormId) -> RepExpr {
    let mut terms = Vec::new();
    for i1 in 0..=m1 {
        for i2 in 0..=m1 {
            for j1 in 0..=m2 {
                for j2 in 0..=m2 {
                    for k in 0..=(2 * i1).min(2 * i2) {
                        for l in 0..=(2 * j1).min(2 * j2) {
                            let mf = 2 * k + 2 * i1.abs_diff(i2);
                            let mg = 2 * l + 2 * j1.abs_diff(j2);
                            terms.push(tensor_term(mf, f, mg, g));
                        }
                    }
                }
            }
        }
    }
    isobaric_fold(terms)
}

/// `pi = Sym^{m1}(f) x Sym^{m2}(g)` as an expression.
pub fn rankin_selberg_pair(m1: u32, m2: u32, f: &FormId, g: &FormId) -> RepExpr {
    tensor_term(m1, f, m2, g)
}

/// Exponent multisets of `pi x pi` and its isobaric decomposition agree.
pub fn check_pi_times_pi(m1: u32, m2: u32, f: &FormId, g: &FormId) -> bool {
    let pi = RepExpr::tensor(RepExpr::sym(m1, f.clone()), RepExpr::sym(m2, g.clone()));
    let lhs = exponents(&RepExpr::tensor(pi.clone(), pi));
    let rhs = exponents(&pi_times_pi_decomposition(m1, m2, f, g));
    lhs == rhs
}

/// Exponent multisets of `(pi x pi) x (pi x pi)` and the nested
/// decomposition agree.
pub fn check_pi_fourth(m1: u32, m2: u32, f: &FormId, g: &FormId) -> bool {
    let pi = RepExpr::tensor(RepExpr::sym(m1, f.clone()), RepExpr::sym(m2, g.clone()));
    let sq = RepExpr::tensor(pi.clone(), pi);
    let lhs = exponents(&RepExpr::tensor(sq.clone(), sq));
    let rhs = exponents(&pi_fourth_decomposition(m1, m2, f, g));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f12() -> FormId {
        FormId::Holo(HoloForm::F12)
    }
    fn f16() -> FormId {
        FormId::Holo(HoloForm::F16)
    }

    fn entry_list(ms: &ExponentMultiset) -> Vec<(Vec<i32>, u64)> {
        ms.entries().to_vec()
    }

    #[test]
    fn sym_exponents() {
        let ms = exponents(&RepExpr::sym(2, f12()));
        assert_eq!(
            entry_list(&ms),
            vec![(vec![-2], 1), (vec![0], 1), (vec![2], 1)]
        );
        assert_eq!(ms.degree(), 3);
    }

    #[test]
    fn tensor_same_form_collapses_coordinates() {
        let e = RepExpr::tensor(RepExpr::sym(1, f12()), RepExpr::sym(1, f12()));
        let ms = exponents(&e);
        assert_eq!(
            entry_list(&ms),
            vec![(vec![-2], 1), (vec![0], 2), (vec![2], 1)]
        );
    }

    #[test]
    fn tensor_distinct_forms() {
        let e = RepExpr::tensor(RepExpr::sym(1, f12()), RepExpr::sym(1, f16()));
        let ms = exponents(&e);
        assert_eq!(
            entry_list(&ms),
            vec![
                (vec![-1, -1], 1),
                (vec![-1, 1], 1),
                (vec![1, -1], 1),
                (vec![1, 1], 1)
            ]
        );
        assert_eq!(ms.degree(), 4);
    }

    #[test]
    fn sym0_equals_zeta() {
        assert_eq!(exponents(&RepExpr::sym(0, f12())), exponents(&RepExpr::Zeta));
    }

    #[test]
    fn decomposition_small_cases() {
        assert!(check_decomposition(1, 0));
        assert!(check_decomposition(0, 3));
        assert!(check_decomposition(4, 5));
        assert!(check_decomposition(0, 0));
    }

    #[test]
    fn decomposition_brute_force_grid() {
        for m in 0..=8 {
            for r in 0..=8 {
                assert!(check_decomposition(m, r), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn power_identities_pass_with_expected_degrees() {
        let checks = check_power_identities();
        assert_eq!(checks.len(), 4);
        for c in &checks {
            assert!(c.pass, "{}", c.name);
            assert_eq!(c.lhs_degree, c.rhs_degree, "{}", c.name);
        }
        assert_eq!(checks[1].lhs_degree, 16);
        assert_eq!(checks[2].lhs_degree, 64);
        assert_eq!(checks[3].lhs_degree, 16); // 1 + 15
    }

    #[test]
    fn pi_times_pi_examples() {
        let d = pi_times_pi_decomposition(0, 0, &f12(), &f16());
        assert_eq!(d, RepExpr::Zeta);

        let d = pi_times_pi_decomposition(1, 0, &f12(), &f16());
        assert_eq!(
            d,
            RepExpr::isobaric(RepExpr::Zeta, RepExpr::sym(2, f12()))
        );
        assert!(check_pi_times_pi(1, 0, &f12(), &f16()));

        // 16 = 1 + 3 + 3 + 9
        let d = pi_times_pi_decomposition(1, 1, &f12(), &f16());
        assert_eq!(exponents(&d).degree(), 16);
        assert!(check_pi_times_pi(1, 1, &f12(), &f16()));
    }

    #[test]
    fn degree_law() {
        for m1 in 0..=4u32 {
            for m2 in 0..=4u32 {
                let pi = rankin_selberg_pair(m1, m2, &f12(), &f16());
                assert_eq!(
                    exponents(&pi).degree(),
                    u64::from(m1 + 1) * u64::from(m2 + 1)
                );
            }
        }
    }

    fn arb_expr() -> impl Strategy<Value = RepExpr> {
        let leaf = prop_oneof![
            Just(RepExpr::Zeta),
            (0u32..5, prop_oneof![Just(f12()), Just(f16())])
                .prop_map(|(m, f)| RepExpr::sym(m, f)),
        ];
        leaf.prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| RepExpr::tensor(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| RepExpr::isobaric(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn exponents_self_dual_and_degree_consistent(e in arb_expr()) {
            let ms = exponents(&e);
            prop_assert!(ms.is_self_dual());
            prop_assert_eq!(ms.degree(), e.degree());
        }
    }
}
