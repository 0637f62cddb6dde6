//! Truncated exact-rational linear combinations of disjoint unions of
//! connected diagrams, in AS/IHX normal form.
//!
//! Monomials are multisets of canonical connected diagrams; coefficients are
//! exact rationals. A series carries the i-degree truncation bound: every
//! operation drops monomials whose internal degree exceeds it. Strut
//! monomials are representable (the contraction calculus needs them) but are
//! rejected wherever the mathematics requires strut-freeness: exponentials,
//! logarithms, and top-substantial Y-parts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{canonicalize, Canonical, Color, ConnectedDiagram, RawDiagram};
use crate::error::DiagramError;
use crate::sector::reduce_component;
use crate::Rational;

/// An affine recoloring: each color maps to a finite rational combination
/// of colors; an empty combination deletes diagrams carrying the color.
pub type ColorMap = BTreeMap<Color, Vec<(Rational, Color)>>;

/// A disjoint-union monomial: a multiset of connected diagrams.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<ConnectedDiagram>);

impl Monomial {
    pub fn empty() -> Self {
        Monomial(vec![])
    }

    pub fn new(mut components: Vec<ConnectedDiagram>) -> Self {
        components.sort();
        Monomial(components)
    }

    pub fn single(d: ConnectedDiagram) -> Self {
        Monomial(vec![d])
    }

    pub fn components(&self) -> &[ConnectedDiagram] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ideg(&self) -> usize {
        self.0.iter().map(|d| d.ideg()).sum()
    }

    pub fn union(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Monomial::new(v)
    }

    pub fn has_strut(&self) -> bool {
        self.0.iter().any(|d| d.is_strut())
    }

    pub fn has_loop(&self) -> bool {
        self.0.iter().any(|d| d.loop_count() > 0)
    }

    /// Total number of legs carrying each color.
    pub fn color_counts(&self) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        for d in &self.0 {
            for c in d.leg_colors() {
                *out.entry(c.clone()).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn count_color(&self, c: &Color) -> usize {
        self.0
            .iter()
            .map(|d| d.leg_colors().iter().filter(|x| *x == c).count())
            .sum()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ideg(), &self.0).cmp(&(other.ideg(), &other.0))
    }
}

/// A truncated series of diagram monomials with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YSeries {
    max_ideg: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl YSeries {
    pub fn zero(max_ideg: usize) -> Self {
        YSeries {
            max_ideg,
            terms: BTreeMap::new(),
        }
    }

    /// The unit: the empty diagram with coefficient 1.
    pub fn one(max_ideg: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::empty(), Rational::one());
        YSeries { max_ideg, terms }
    }

    /// Builds a series from already canonical, already reduced monomials.
    pub fn from_terms(
        max_ideg: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut out = YSeries::zero(max_ideg);
        for (m, c) in terms {
            out.accumulate(m, c);
        }
        out
    }

    /// Normalizes an unreduced combination: each monomial is a list of raw
    /// connected diagrams. Components are canonicalized (AS), expanded in
    /// their IHX sector basis, and the result is truncated at `max_ideg`.
    pub fn reduce(
        max_ideg: usize,
        input: impl IntoIterator<Item = (Vec<RawDiagram>, Rational)>,
    ) -> Result<Self, DiagramError> {
        let mut out = YSeries::zero(max_ideg);
        for (raws, coeff) in input {
            if coeff.is_zero() {
                continue;
            }
            let mut coeff = coeff;
            let mut comps = Vec::with_capacity(raws.len());
            let mut dead = false;
            for raw in &raws {
                match canonicalize(raw)? {
                    Canonical::Zero => {
                        dead = true;
                        break;
                    }
                    Canonical::Diagram(d, s) => {
                        if s < 0 {
                            coeff = -coeff;
                        }
                        comps.push(d);
                    }
                }
            }
            if dead {
                continue;
            }
            if comps.iter().map(|d| d.ideg()).sum::<usize>() > max_ideg {
                continue;
            }
            out.accumulate_reduced(comps, coeff);
        }
        Ok(out)
    }

    /// Accumulates `coeff` times the product of the IHX expansions of the
    /// given canonical components.
    pub(crate) fn accumulate_reduced(&mut self, comps: Vec<ConnectedDiagram>, coeff: Rational) {
        let mut partial: Vec<(Vec<ConnectedDiagram>, Rational)> = vec![(vec![], coeff)];
        for comp in comps {
            let expansion = reduce_component(&comp);
            let mut next = Vec::with_capacity(partial.len() * expansion.len());
            for (acc, c) in &partial {
                let acc_ideg: usize = acc.iter().map(|d| d.ideg()).sum();
                for (d, q) in expansion.iter() {
                    if acc_ideg + d.ideg() > self.max_ideg {
                        continue;
                    }
                    let mut v = acc.clone();
                    v.push(d.clone());
                    next.push((v, c * q));
                }
            }
            partial = next;
            if partial.is_empty() {
                return;
            }
        }
        for (comps, c) in partial {
            self.accumulate(Monomial::new(comps), c);
        }
    }

    fn accumulate(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.ideg() > self.max_ideg {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn max_ideg(&self) -> usize {
        self.max_ideg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact coefficient of a canonical reduced monomial (0 if absent).
    /// Errors when `m` is not in reduced normal form.
    pub fn coefficient(&self, m: &Monomial) -> Result<Rational, DiagramError> {
        for d in m.components() {
            let exp = reduce_component(d);
            let reduces_to_self = exp.len() == 1 && exp[0].0 == *d && exp[0].1.is_one();
            if !reduces_to_self {
                return Err(DiagramError::NotNormalForm);
            }
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(Rational::zero))
    }

    pub(crate) fn coefficient_raw(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn unit_coefficient(&self) -> Rational {
        self.coefficient_raw(&Monomial::empty())
    }

    pub fn add(&self, other: &YSeries) -> Result<YSeries, DiagramError> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &YSeries) -> Result<YSeries, DiagramError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> YSeries {
        YSeries {
            max_ideg: self.max_ideg,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> YSeries {
        if q.is_zero() {
            return YSeries::zero(self.max_ideg);
        }
        YSeries {
            max_ideg: self.max_ideg,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Bilinear commutative product for ⊔, truncating at the common bound.
    pub fn disjoint_union(&self, other: &YSeries) -> Result<YSeries, DiagramError> {
        self.check_trunc(other)?;
        let mut out = YSeries::zero(self.max_ideg);
        for (m1, c1) in &self.terms {
            let d1 = m1.ideg();
            for (m2, c2) in &other.terms {
                if d1 + m2.ideg() > self.max_ideg {
                    continue;
                }
                out.accumulate(m1.union(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// ⊔-exponential of a series with no empty-diagram term and no struts.
    pub fn exp_union(&self) -> Result<YSeries, DiagramError> {
        if !self.unit_coefficient().is_zero() {
            return Err(DiagramError::ExpOnUnit);
        }
        self.check_strut_free()?;
        let mut acc = YSeries::one(self.max_ideg);
        let mut power = YSeries::one(self.max_ideg);
        let mut factorial = Rational::one();
        for k in 1..=self.max_ideg {
            power = power.disjoint_union(self)?;
            if power.is_zero() {
                break;
            }
            factorial *= Rational::from_integer(k.into());
            acc = acc.add(&power.scale(&factorial.recip()))?;
        }
        Ok(acc)
    }

    /// ⊔-logarithm of a series with empty-diagram coefficient 1 and no
    /// struts. Exact inverse of [`YSeries::exp_union`] at every truncation.
    pub fn log_union(&self) -> Result<YSeries, DiagramError> {
        let unit = self.unit_coefficient();
        if !unit.is_one() {
            return Err(DiagramError::LogWithoutUnit(unit.to_string()));
        }
        self.check_strut_free()?;
        let y = self.sub(&YSeries::one(self.max_ideg))?;
        let mut acc = YSeries::zero(self.max_ideg);
        let mut power = YSeries::one(self.max_ideg);
        for k in 1..=self.max_ideg {
            power = power.disjoint_union(&y)?;
            if power.is_zero() {
                break;
            }
            let coeff = Rational::from_integer(if k % 2 == 1 { 1 } else { -1 }.into())
                / Rational::from_integer(k.into());
            acc = acc.add(&power.scale(&coeff))?;
        }
        Ok(acc)
    }

    /// Multilinear recoloring of legs. `sigma` must be defined on every leg
    /// color occurring in the series; an empty target combination deletes
    /// the diagram.
    pub fn recolor_affine(&self, sigma: &ColorMap) -> Result<YSeries, DiagramError> {
        let mut comp_memo: HashMap<ConnectedDiagram, Vec<(ConnectedDiagram, Rational)>> =
            HashMap::new();
        let mut out = YSeries::zero(self.max_ideg);
        for (m, coeff) in &self.terms {
            let mut partial: Vec<(Vec<ConnectedDiagram>, Rational)> = vec![(vec![], coeff.clone())];
            for comp in m.components() {
                let expansion = match comp_memo.get(comp) {
                    Some(e) => e.clone(),
                    None => {
                        let e = recolor_component(comp, sigma)?;
                        comp_memo.insert(comp.clone(), e.clone());
                        e
                    }
                };
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (acc, c) in &partial {
                    for (d, q) in &expansion {
                        let mut v = acc.clone();
                        v.push(d.clone());
                        next.push((v, c * q));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (comps, c) in partial {
                out.accumulate(Monomial::new(comps), c);
            }
        }
        Ok(out)
    }

    /// Keeps the monomials with exactly one connected component.
    pub fn connected_part(&self) -> YSeries {
        YSeries {
            max_ideg: self.max_ideg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.components().len() == 1)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// A series with unit coefficient 1 is group-like when its logarithm is
    /// supported on connected monomials.
    pub fn is_group_like(&self) -> Result<bool, DiagramError> {
        if !self.unit_coefficient().is_one() {
            return Ok(false);
        }
        let log = self.log_union()?;
        Ok(log.terms.keys().all(|m| m.components().len() == 1))
    }

    /// Drops every monomial containing a component with first Betti
    /// number at least one.
    pub fn tree_reduce(&self) -> YSeries {
        YSeries {
            max_ideg: self.max_ideg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_loop())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous part of internal degree `n`.
    pub fn ideg_part(&self, n: usize) -> YSeries {
        YSeries {
            max_ideg: self.max_ideg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.ideg() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-truncates to a lower bound.
    pub fn truncated(&self, max_ideg: usize) -> YSeries {
        YSeries {
            max_ideg,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.ideg() <= max_ideg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the series at a higher truncation bound. The terms are
    /// unchanged; only the bound grows.
    pub fn with_max_ideg(&self, max_ideg: usize) -> YSeries {
        assert!(
            max_ideg >= self.max_ideg,
            "use truncated() to lower the bound"
        );
        YSeries {
            max_ideg,
            terms: self.terms.clone(),
        }
    }

    pub fn has_strut(&self) -> bool {
        self.terms.keys().any(|m| m.has_strut())
    }

    pub fn check_strut_free(&self) -> Result<(), DiagramError> {
        if self.has_strut() {
            Err(DiagramError::UnexpectedStrut)
        } else {
            Ok(())
        }
    }

    /// No monomial contains a strut both of whose colors lie in `s`.
    pub fn is_substantial(&self, s: &[Color]) -> bool {
        self.terms.keys().all(|m| {
            m.components()
                .iter()
                .all(|d| !(d.is_strut() && d.leg_colors().iter().all(|c| s.contains(c))))
        })
    }

    /// All colors occurring on legs of the series.
    pub fn occurring_colors(&self) -> Vec<Color> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for d in m.components() {
                set.extend(d.leg_colors().iter().cloned());
            }
        }
        set.into_iter().collect()
    }

    fn check_trunc(&self, other: &YSeries) -> Result<(), DiagramError> {
        if self.max_ideg != other.max_ideg {
            return Err(DiagramError::TruncationMismatch(
                self.max_ideg,
                other.max_ideg,
            ));
        }
        Ok(())
    }
}

fn recolor_component(
    comp: &ConnectedDiagram,
    sigma: &ColorMap,
) -> Result<Vec<(ConnectedDiagram, Rational)>, DiagramError> {
    for c in comp.leg_colors() {
        if !sigma.contains_key(c) {
            return Err(DiagramError::UnmappedColor(c.clone()));
        }
    }
    let raw = comp.to_raw();
    let mut expanded: Vec<(RawDiagram, Rational)> = vec![(raw.clone(), Rational::one())];
    for (leg_idx, (_, color)) in raw.legs.iter().enumerate() {
        let targets = &sigma[color];
        let mut next = Vec::with_capacity(expanded.len() * targets.len());
        for (r, q) in &expanded {
            for (weight, new_color) in targets {
                let mut r2 = r.clone();
                r2.legs[leg_idx].1 = new_color.clone();
                next.push((r2, q * weight));
            }
        }
        expanded = next;
        if expanded.is_empty() {
            break;
        }
    }
    // Canonicalize and IHX-reduce each branch.
    let mut out: BTreeMap<ConnectedDiagram, Rational> = BTreeMap::new();
    for (r, q) in expanded {
        if q.is_zero() {
            continue;
        }
        match canonicalize(&r)? {
            Canonical::Zero => {}
            Canonical::Diagram(d, s) => {
                let q = if s < 0 { -q } else { q };
                for (b, w) in reduce_component(&d).iter() {
                    let entry = out.entry(b.clone()).or_insert_with(Rational::zero);
                    *entry += &q * w;
                }
            }
        }
    }
    Ok(out.into_iter().filter(|(_, q)| !q.is_zero()).collect())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(crate::notation::diagram_to_string)
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Display for YSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn free(n: &str) -> Color {
        Color::free(n)
    }

    fn y_series(max_ideg: usize) -> YSeries {
        YSeries::reduce(
            max_ideg,
            vec![(
                vec![RawDiagram::y(free("a"), free("b"), free("c"))],
                rat(1, 1),
            )],
        )
        .unwrap()
    }

    #[test]
    fn as_relation_cancels() {
        let s = YSeries::reduce(
            2,
            vec![
                (
                    vec![RawDiagram::y(free("a"), free("c"), free("b"))],
                    rat(1, 1),
                ),
                (
                    vec![RawDiagram::y(free("a"), free("b"), free("c"))],
                    rat(1, 1),
                ),
            ],
        )
        .unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let s = YSeries::reduce(
            2,
            vec![
                (vec![], rat(2, 1)),
                (
                    vec![RawDiagram::y(free("a"), free("b"), free("c"))],
                    rat(0, 1),
                ),
            ],
        )
        .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.unit_coefficient(), rat(2, 1));
    }

    #[test]
    fn union_unit_law() {
        let x = y_series(2);
        let unit = YSeries::one(2);
        assert_eq!(unit.disjoint_union(&x).unwrap(), x);
        assert_eq!(x.disjoint_union(&unit).unwrap(), x);
    }

    #[test]
    fn union_squares_and_truncates() {
        let x = y_series(2);
        let sq = x.disjoint_union(&x).unwrap();
        assert_eq!(sq.len(), 1);
        let (m, c) = sq.terms().next().unwrap();
        assert_eq!(m.ideg(), 2);
        assert_eq!(m.components().len(), 2);
        assert_eq!(c, &rat(1, 1));
        // At max_ideg 2 the cube vanishes.
        assert!(sq.disjoint_union(&x).unwrap().is_zero());
    }

    #[test]
    fn exp_of_single_y() {
        let x = y_series(2);
        let e = x.exp_union().unwrap();
        // ∅ + Y + ½ Y⊔Y
        assert_eq!(e.len(), 3);
        assert_eq!(e.unit_coefficient(), rat(1, 1));
        let square = x.disjoint_union(&x).unwrap();
        let (sq_m, _) = square.terms().next().unwrap();
        assert_eq!(e.coefficient_raw(sq_m), rat(1, 2));
    }

    #[test]
    fn exp_log_inverse() {
        for ideg in [1usize, 2, 3, 4] {
            let x = y_series(ideg);
            let e = x.exp_union().unwrap();
            assert_eq!(e.log_union().unwrap(), x);
            assert_eq!(
                x.exp_union()
                    .unwrap()
                    .log_union()
                    .unwrap()
                    .exp_union()
                    .unwrap(),
                e
            );
        }
    }

    #[test]
    fn log_of_unit_is_zero() {
        assert!(YSeries::one(3).log_union().unwrap().is_zero());
    }

    #[test]
    fn group_like_detection() {
        let x = y_series(2);
        assert!(x.exp_union().unwrap().is_group_like().unwrap());
        // ∅ + Y⊔Y without the matching single-Y term is not group-like.
        let sq = x.disjoint_union(&x).unwrap();
        let bad = YSeries::one(2).add(&sq).unwrap();
        assert!(!bad.is_group_like().unwrap());
    }

    #[test]
    fn recolor_pure_renaming() {
        let x = YSeries::reduce(
            2,
            vec![(
                vec![RawDiagram::y(
                    Color::plus(1),
                    Color::plus(2),
                    Color::plus(3),
                )],
                rat(1, 1),
            )],
        )
        .unwrap();
        let sigma: ColorMap = (1..=3)
            .map(|i| (Color::plus(i), vec![(rat(1, 1), Color::star(i))]))
            .collect();
        let renamed = x.recolor_affine(&sigma).unwrap();
        let expect = YSeries::reduce(
            2,
            vec![(
                vec![RawDiagram::y(
                    Color::star(1),
                    Color::star(2),
                    Color::star(3),
                )],
                rat(1, 1),
            )],
        )
        .unwrap();
        assert_eq!(renamed, expect);
    }

    #[test]
    fn recolor_deletes_on_empty_target() {
        let x = YSeries::reduce(
            2,
            vec![(
                vec![RawDiagram::bubble(Color::minus(1), Color::plus(1))],
                rat(1, 1),
            )],
        )
        .unwrap();
        let mut sigma: ColorMap = BTreeMap::new();
        sigma.insert(Color::minus(1), vec![]);
        sigma.insert(Color::plus(1), vec![(rat(1, 1), Color::plus(1))]);
        assert!(x.recolor_affine(&sigma).unwrap().is_zero());
    }

    #[test]
    fn recolor_is_multilinear() {
        let x = y_series(2);
        let mut sigma: ColorMap = BTreeMap::new();
        sigma.insert(
            free("a"),
            vec![(rat(1, 1), free("a")), (rat(2, 1), free("x"))],
        );
        sigma.insert(free("b"), vec![(rat(1, 1), free("b"))]);
        sigma.insert(free("c"), vec![(rat(1, 1), free("c"))]);
        let out = x.recolor_affine(&sigma).unwrap();
        let expect = YSeries::reduce(
            2,
            vec![
                (
                    vec![RawDiagram::y(free("a"), free("b"), free("c"))],
                    rat(1, 1),
                ),
                (
                    vec![RawDiagram::y(free("x"), free("b"), free("c"))],
                    rat(2, 1),
                ),
            ],
        )
        .unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn recolor_errors_on_missing_color() {
        let x = y_series(2);
        let sigma: ColorMap = BTreeMap::new();
        assert!(matches!(
            x.recolor_affine(&sigma),
            Err(DiagramError::UnmappedColor(_))
        ));
    }

    #[test]
    fn tree_reduce_drops_loops() {
        let bubble = YSeries::reduce(
            2,
            vec![(
                vec![RawDiagram::bubble(Color::minus(1), Color::plus(1))],
                rat(1, 1),
            )],
        )
        .unwrap();
        assert!(bubble.tree_reduce().is_zero());
        let y = y_series(2);
        assert_eq!(y.tree_reduce(), y);
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = y_series(2);
        let b = y_series(3);
        assert!(matches!(
            a.disjoint_union(&b),
            Err(DiagramError::TruncationMismatch(2, 3))
        ));
    }

    #[test]
    fn reduce_commutes_with_union() {
        // Normalizing a product equals the product of normalizations.
        let h_instance = |perm: [&str; 4]| {
            RawDiagram::h(free(perm[0]), free(perm[1]), free(perm[2]), free(perm[3]))
        };
        let left = YSeries::reduce(
            4,
            vec![(
                vec![
                    h_instance(["a", "b", "c", "d"]),
                    h_instance(["b", "c", "a", "d"]),
                ],
                rat(1, 1),
            )],
        )
        .unwrap();
        let p1 =
            YSeries::reduce(4, vec![(vec![h_instance(["a", "b", "c", "d"])], rat(1, 1))]).unwrap();
        let p2 =
            YSeries::reduce(4, vec![(vec![h_instance(["b", "c", "a", "d"])], rat(1, 1))]).unwrap();
        assert_eq!(left, p1.disjoint_union(&p2).unwrap());
    }

    #[test]
    fn coefficient_requires_normal_form() {
        let x = y_series(2);
        let exp = x.exp_union().unwrap();
        let y_mono = x.terms().next().unwrap().0.clone();
        assert_eq!(exp.coefficient(&y_mono).unwrap(), rat(1, 1));
    }
}
