//! Contraction brackets between diagram series and formal Gaussian
//! integration along a color set.
//!
//! The bracket `⟨E, D⟩_S` sums over all ways of gluing the S-colored legs
//! of D to the S-colored legs of E, one bijection per color. Gluing carries
//! no intrinsic sign; AS signs appear through re-canonicalization of the
//! glued components. `wick_contract` is the closed form of the bracket with
//! a strut exponential on one side: it sums over perfect matchings of the
//! S-legs of each monomial, a matched pair with colors `(i, j)` weighing
//! `M[i][j]`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::diagram::{canonicalize, Canonical, Color, ConnectedDiagram, RawDiagram};
use crate::error::{DiagramError, PairingError};
use crate::matrix::StrutMatrix;
use crate::series::{ColorMap, Monomial, YSeries};
use crate::Rational;

/// A monomial's components assembled into one half-edge arena, ready for
/// leg gluing.
struct Assembly {
    triples: Vec<[usize; 3]>,
    legs: Vec<(usize, Color)>,
    pairs: Vec<(usize, usize)>,
}

impl Assembly {
    fn new(components: &[&ConnectedDiagram]) -> Assembly {
        let mut triples = Vec::new();
        let mut legs = Vec::new();
        let mut pairs = Vec::new();
        let mut offset = 0;
        for comp in components {
            let raw = comp.to_raw();
            let width = 2 * raw.pairs.len();
            triples.extend(raw.triples.iter().map(|t| t.map(|d| d + offset)));
            legs.extend(raw.legs.iter().map(|(d, c)| (d + offset, c.clone())));
            pairs.extend(raw.pairs.iter().map(|&(a, b)| (a + offset, b + offset)));
            offset += width;
        }
        Assembly {
            triples,
            legs,
            pairs,
        }
    }

    /// Leg darts carrying each of the given colors, in deterministic order.
    fn legs_by_color(&self, colors: &[Color]) -> BTreeMap<Color, Vec<usize>> {
        let mut out: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
        for (dart, c) in &self.legs {
            if colors.contains(c) {
                out.entry(c.clone()).or_default().push(*dart);
            }
        }
        out
    }

    /// Glues the listed pairs of leg darts and splits the result into
    /// canonical connected components. Returns `None` when any component
    /// vanishes. Chains of glued struts are smoothed; a closed chain (a
    /// vertexless circle) is a precondition violation and errors.
    fn glue(
        &self,
        glue_pairs: &[(usize, usize)],
    ) -> Result<Option<(Vec<ConnectedDiagram>, i8)>, DiagramError> {
        let mut partner: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &self.pairs {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let mut glued_to: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in glue_pairs {
            glued_to.insert(a, b);
            glued_to.insert(b, a);
        }
        // Walk maximal chains through glued legs to the surviving darts.
        let mut new_pairs: Vec<(usize, usize)> = Vec::new();
        let mut visited_glued: HashMap<usize, bool> =
            glued_to.keys().map(|&d| (d, false)).collect();
        let surviving_legs: Vec<(usize, Color)> = self
            .legs
            .iter()
            .filter(|(d, _)| !glued_to.contains_key(d))
            .cloned()
            .collect();
        let mut handled: HashMap<usize, bool> = HashMap::new();
        let walk = |start: usize, visited_glued: &mut HashMap<usize, bool>| -> usize {
            // `start` is a surviving dart; step across its edge, then hop
            // through glued legs until a surviving dart appears.
            let mut current = partner[&start];
            loop {
                if let Some(&next) = glued_to.get(&current) {
                    visited_glued.insert(current, true);
                    visited_glued.insert(next, true);
                    current = partner[&next];
                } else {
                    return current;
                }
            }
        };
        let is_glued = |d: usize| glued_to.contains_key(&d);
        let mut surviving_darts: Vec<usize> = self
            .triples
            .iter()
            .flat_map(|t| t.iter().copied())
            .collect();
        surviving_darts.extend(surviving_legs.iter().map(|(d, _)| *d));
        for &d in &surviving_darts {
            if handled.get(&d).copied().unwrap_or(false) {
                continue;
            }
            let other = walk(d, &mut visited_glued);
            debug_assert!(!is_glued(other));
            handled.insert(d, true);
            handled.insert(other, true);
            new_pairs.push((d, other));
        }
        if visited_glued.values().any(|&v| !v) {
            return Err(DiagramError::Malformed(
                "gluing closed a vertexless circle".into(),
            ));
        }
        // Split into connected components over the new pairing.
        let raw = RawDiagram {
            triples: self.triples.clone(),
            legs: surviving_legs,
            pairs: new_pairs,
        };
        split_and_canonicalize(&raw)
    }
}

/// Splits a possibly disconnected raw diagram into connected components and
/// canonicalizes each one.
pub(crate) fn split_and_canonicalize(
    raw: &RawDiagram,
) -> Result<Option<(Vec<ConnectedDiagram>, i8)>, DiagramError> {
    // Union-find over darts: same triple, same leg, or paired.
    let mut ids: Vec<usize> = raw
        .triples
        .iter()
        .flat_map(|t| t.iter().copied())
        .chain(raw.legs.iter().map(|(d, _)| *d))
        .collect();
    ids.sort_unstable();
    let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for t in &raw.triples {
        union(&mut parent, index[&t[0]], index[&t[1]]);
        union(&mut parent, index[&t[0]], index[&t[2]]);
    }
    for &(a, b) in &raw.pairs {
        union(&mut parent, index[&a], index[&b]);
    }
    let mut groups: BTreeMap<usize, (Vec<[usize; 3]>, Vec<(usize, Color)>, Vec<(usize, usize)>)> =
        BTreeMap::new();
    for t in &raw.triples {
        let root = find(&mut parent, index[&t[0]]);
        groups.entry(root).or_default().0.push(*t);
    }
    for (d, c) in &raw.legs {
        let root = find(&mut parent, index[d]);
        groups.entry(root).or_default().1.push((*d, c.clone()));
    }
    for &(a, b) in &raw.pairs {
        let root = find(&mut parent, index[&a]);
        groups.entry(root).or_default().2.push((a, b));
    }
    let mut comps = Vec::with_capacity(groups.len());
    let mut sign = 1i8;
    for (_, (triples, legs, pairs)) in groups {
        let piece = RawDiagram {
            triples,
            legs,
            pairs,
        };
        match canonicalize(&piece)? {
            Canonical::Zero => return Ok(None),
            Canonical::Diagram(d, s) => {
                sign *= s;
                comps.push(d);
            }
        }
    }
    Ok(Some((comps, sign)))
}

/// The contraction bracket `⟨E, D⟩_S`.
///
/// Bilinear; a monomial pair with mismatched per-color leg counts
/// contributes zero. Errors when neither side is S-substantial.
pub fn contract_finite(e: &YSeries, d: &YSeries, s: &[Color]) -> Result<YSeries, PairingError> {
    if e.max_ideg() != d.max_ideg() {
        return Err(PairingError::Diagram(DiagramError::TruncationMismatch(
            e.max_ideg(),
            d.max_ideg(),
        )));
    }
    if !e.is_substantial(s) && !d.is_substantial(s) {
        return Err(PairingError::NotSubstantial);
    }
    let max_ideg = e.max_ideg();
    let mut out = YSeries::zero(max_ideg);
    for (me, ce) in e.terms() {
        for (md, cd) in d.terms() {
            if me.ideg() + md.ideg() > max_ideg {
                continue;
            }
            contract_monomials(me, md, s, &(ce * cd), &mut out)?;
        }
    }
    Ok(out)
}

fn contract_monomials(
    me: &Monomial,
    md: &Monomial,
    s: &[Color],
    coeff: &Rational,
    out: &mut YSeries,
) -> Result<(), PairingError> {
    let e_parts: Vec<&ConnectedDiagram> = me.components().iter().collect();
    let d_parts: Vec<&ConnectedDiagram> = md.components().iter().collect();
    let mut all: Vec<&ConnectedDiagram> = e_parts.clone();
    all.extend(d_parts.iter().copied());
    let assembly = Assembly::new(&all);
    // Split the assembled legs back into the E side and the D side: E
    // components come first, so their darts are the low ones.
    let e_dart_count: usize = e_parts.iter().map(|c| 2 * c.edges().len()).sum();
    let mut e_legs: BTreeMap<&Color, Vec<usize>> = BTreeMap::new();
    let mut d_legs: BTreeMap<&Color, Vec<usize>> = BTreeMap::new();
    for (dart, color) in &assembly.legs {
        if !s.contains(color) {
            continue;
        }
        if *dart < e_dart_count {
            e_legs.entry(color).or_default().push(*dart);
        } else {
            d_legs.entry(color).or_default().push(*dart);
        }
    }
    for c in s {
        let ne = e_legs.get(c).map_or(0, |v| v.len());
        let nd = d_legs.get(c).map_or(0, |v| v.len());
        if ne != nd {
            return Ok(()); // no gluings exist
        }
    }
    // Enumerate one bijection per color.
    let colors: Vec<&Color> = e_legs.keys().copied().collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    enumerate_bijections(
        &colors,
        &e_legs,
        &d_legs,
        0,
        &mut pairs,
        &mut |glue_pairs| -> Result<(), PairingError> {
            if let Some((comps, sign)) = assembly.glue(glue_pairs)? {
                let q = if sign < 0 { -coeff } else { coeff.clone() };
                out.accumulate_reduced(comps, q);
            }
            Ok(())
        },
    )
}

fn enumerate_bijections(
    colors: &[&Color],
    e_legs: &BTreeMap<&Color, Vec<usize>>,
    d_legs: &BTreeMap<&Color, Vec<usize>>,
    ci: usize,
    pairs: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&[(usize, usize)]) -> Result<(), PairingError>,
) -> Result<(), PairingError> {
    if ci == colors.len() {
        return f(pairs);
    }
    let e = &e_legs[colors[ci]];
    let d = &d_legs[colors[ci]];
    let k = e.len();
    let mut used = vec![false; k];
    fn rec(
        e: &[usize],
        d: &[usize],
        pos: usize,
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        colors: &[&Color],
        e_legs: &BTreeMap<&Color, Vec<usize>>,
        d_legs: &BTreeMap<&Color, Vec<usize>>,
        ci: usize,
        f: &mut impl FnMut(&[(usize, usize)]) -> Result<(), PairingError>,
    ) -> Result<(), PairingError> {
        if pos == e.len() {
            return enumerate_bijections(colors, e_legs, d_legs, ci + 1, pairs, f);
        }
        for j in 0..d.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            pairs.push((e[pos], d[j]));
            rec(e, d, pos + 1, used, pairs, colors, e_legs, d_legs, ci, f)?;
            pairs.pop();
            used[j] = false;
        }
        Ok(())
    }
    rec(e, d, 0, &mut used, pairs, colors, e_legs, d_legs, ci, f)
}

/// Wick contraction of `D` against the strut exponential `[M/2]`: each
/// monomial sums over perfect matchings of its S-legs, a matched pair with
/// colors `(i, j)` contributing the factor `M[i][j]`.
pub fn wick_contract(m: &StrutMatrix, d: &YSeries) -> Result<YSeries, PairingError> {
    if !m.is_symmetric() {
        return Err(PairingError::NotSymmetric);
    }
    let s = m.colors();
    if !d.is_substantial(s) {
        return Err(PairingError::NotSubstantial);
    }
    let mut out = YSeries::zero(d.max_ideg());
    for (mono, coeff) in d.terms() {
        let parts: Vec<&ConnectedDiagram> = mono.components().iter().collect();
        let assembly = Assembly::new(&parts);
        let by_color = assembly.legs_by_color(s);
        let legs: Vec<(usize, Color)> = by_color
            .iter()
            .flat_map(|(c, darts)| darts.iter().map(move |&d| (d, c.clone())))
            .collect();
        if legs.len() % 2 != 0 {
            continue; // odd S-leg count contributes zero
        }
        enumerate_matchings(
            &legs,
            m,
            &mut Vec::new(),
            &mut vec![false; legs.len()],
            &Rational::from(coeff.clone()),
            &mut |pairs, weight| {
                if let Some((comps, sign)) = assembly.glue(pairs)? {
                    let q = if sign < 0 { -weight } else { weight.clone() };
                    out.accumulate_reduced(comps, q);
                }
                Ok(())
            },
        )?;
    }
    Ok(out)
}

fn enumerate_matchings(
    legs: &[(usize, Color)],
    m: &StrutMatrix,
    pairs: &mut Vec<(usize, usize)>,
    taken: &mut Vec<bool>,
    weight: &Rational,
    f: &mut impl FnMut(&[(usize, usize)], &Rational) -> Result<(), PairingError>,
) -> Result<(), PairingError> {
    let Some(first) = taken.iter().position(|&b| !b) else {
        return f(pairs, weight);
    };
    taken[first] = true;
    for j in (first + 1)..legs.len() {
        if taken[j] {
            continue;
        }
        let factor = m.get(&legs[first].1, &legs[j].1);
        if factor.is_zero() {
            continue;
        }
        taken[j] = true;
        pairs.push((legs[first].0, legs[j].0));
        let w = weight * &factor;
        enumerate_matchings(legs, m, pairs, taken, &w, f)?;
        pairs.pop();
        taken[j] = false;
    }
    taken[first] = false;
    Ok(())
}

/// The formal Gaussian integral along `S` of `[L/2] ⊔ P`, defined when the
/// symmetric matrix `L` is nondegenerate: `⟨[-L⁻¹/2], P⟩_S`.
pub fn gaussian_integrate(
    l: &StrutMatrix,
    p: &YSeries,
    s: &[Color],
) -> Result<YSeries, PairingError> {
    if !l.is_symmetric() {
        return Err(PairingError::NotSymmetric);
    }
    let mut want = s.to_vec();
    want.sort();
    let mut have = l.colors().to_vec();
    have.sort();
    if want != have {
        return Err(PairingError::ColorMismatch {
            expected: format!("{want:?}"),
            found: format!("{have:?}"),
        });
    }
    let inv = l.inverse().map_err(|_| PairingError::Singular)?;
    wick_contract(&inv.neg(), p)
}

/// Integrates only along `s ⊆ L.colors()`, returning the data of the
/// remaining Gaussian: the Schur complement and the new substantial part.
///
/// Completing the square sends an `s`-leg either to a Wick pairing with
/// weight `-L_ss⁻¹` or to the affine image `-(L_ss⁻¹ L_{s,rest})·leg`.
pub fn integrate_partial(
    l: &StrutMatrix,
    p: &YSeries,
    s: &[Color],
) -> Result<(StrutMatrix, YSeries), PairingError> {
    if !l.is_symmetric() {
        return Err(PairingError::NotSymmetric);
    }
    let rest: Vec<Color> = l
        .colors()
        .iter()
        .filter(|c| !s.contains(c))
        .cloned()
        .collect();
    let a = l.restrict(s)?;
    let a_inv = a.inverse().map_err(|_| PairingError::Singular)?;
    let schur = l.schur_complement(s)?;
    // Shift map: s_i -> s_i - sum_t (A^{-1} L_{S,rest})[i][t] * t.
    let cross = l.block(s, &rest);
    let shift = crate::matrix::block_mul(
        &(0..s.len())
            .map(|i| (0..s.len()).map(|j| a_inv.entry(i, j).clone()).collect())
            .collect::<Vec<_>>(),
        &cross,
        rest.len(),
    );
    let mut sigma: ColorMap = BTreeMap::new();
    for (i, si) in s.iter().enumerate() {
        let mut targets = vec![(Rational::from_integer(1.into()), si.clone())];
        for (t, ct) in rest.iter().enumerate() {
            let w = -&shift[i][t];
            if !w.is_zero() {
                targets.push((w, ct.clone()));
            }
        }
        sigma.insert(si.clone(), targets);
    }
    for c in p.occurring_colors() {
        sigma
            .entry(c.clone())
            .or_insert_with(|| vec![(Rational::from_integer(1.into()), c)]);
    }
    let shifted = p.recolor_affine(&sigma).map_err(PairingError::Diagram)?;
    let p_new = wick_contract(&a_inv.neg(), &shifted)?;
    Ok((schur, p_new))
}

/// Checks the group-like closure of the bracket: for group-like strut-free
/// inputs (one of them S-substantial), `⟨E,D⟩_S` equals the ⊔-exponential
/// of its connected part at the working truncation.
pub fn check_group_like_closure(
    e: &YSeries,
    d: &YSeries,
    s: &[Color],
) -> Result<bool, PairingError> {
    if !e.is_group_like().map_err(PairingError::Diagram)?
        || !d.is_group_like().map_err(PairingError::Diagram)?
    {
        return Err(PairingError::Diagram(DiagramError::LogWithoutUnit(
            "closure check needs group-like inputs".into(),
        )));
    }
    let bracket = contract_finite(e, d, s)?;
    let rebuilt = bracket
        .log_union()
        .and_then(|l| l.connected_part().exp_union())
        .map_err(PairingError::Diagram)?;
    Ok(bracket == rebuilt && bracket.is_group_like().map_err(PairingError::Diagram)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn free(n: &str) -> Color {
        Color::free(n)
    }

    fn series(max_ideg: usize, raws: Vec<(Vec<RawDiagram>, Rational)>) -> YSeries {
        YSeries::reduce(max_ideg, raws).unwrap()
    }

    #[test]
    fn strut_chain_contraction() {
        let s = free("s");
        let e = series(
            2,
            vec![(vec![RawDiagram::strut(free("x"), s.clone())], rat(1, 1))],
        );
        let d = series(
            2,
            vec![(vec![RawDiagram::strut(s.clone(), free("y"))], rat(1, 1))],
        );
        let out = contract_finite(&e, &d, &[s]).unwrap();
        let expect = series(
            2,
            vec![(vec![RawDiagram::strut(free("x"), free("y"))], rat(1, 1))],
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn leg_count_mismatch_gives_zero() {
        let s = free("s");
        let e = YSeries::one(2);
        let d = series(
            2,
            vec![(
                vec![RawDiagram::y(free("x"), s.clone(), s.clone())],
                rat(1, 1),
            )],
        );
        let out = contract_finite(&e, &d, &[s]).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn bracket_is_symmetric() {
        let s = free("s");
        let e = series(
            3,
            vec![(
                vec![RawDiagram::y(s.clone(), free("a"), free("b"))],
                rat(1, 2),
            )],
        );
        let d = series(
            3,
            vec![(
                vec![RawDiagram::y(s.clone(), free("c"), free("d"))],
                rat(3, 1),
            )],
        );
        let ed = contract_finite(&e, &d, &[s.clone()]).unwrap();
        let de = contract_finite(&d, &e, &[s.clone()]).unwrap();
        assert_eq!(ed, de);
        // The single gluing joins the two Y vertices into the H-type tree
        // H(a,b|c,d), up to IHX normal form.
        let expect = series(
            3,
            vec![(
                vec![RawDiagram::h(free("a"), free("b"), free("c"), free("d"))],
                rat(3, 2),
            )],
        );
        assert_eq!(ed, expect);
    }

    #[test]
    fn neither_side_substantial_errors() {
        let s = free("s");
        let t = free("t");
        let e = series(
            2,
            vec![(vec![RawDiagram::strut(s.clone(), t.clone())], rat(1, 1))],
        );
        let d = series(
            2,
            vec![(vec![RawDiagram::strut(s.clone(), t.clone())], rat(1, 1))],
        );
        assert!(matches!(
            contract_finite(&e, &d, &[s, t]),
            Err(PairingError::NotSubstantial)
        ));
    }

    #[test]
    fn wick_empty_matching_is_identity() {
        let s = free("s");
        let m = StrutMatrix::new(vec![s], vec![vec![rat(5, 1)]]).unwrap();
        let d = series(
            2,
            vec![(
                vec![RawDiagram::y(free("a"), free("b"), free("c"))],
                rat(2, 1),
            )],
        );
        assert_eq!(wick_contract(&m, &d).unwrap(), d);
    }

    #[test]
    fn wick_single_pair() {
        let s = free("s");
        let m = StrutMatrix::new(vec![s.clone()], vec![vec![rat(7, 1)]]).unwrap();
        let d = series(
            2,
            vec![(
                vec![
                    RawDiagram::strut(free("x"), s.clone()),
                    RawDiagram::strut(s.clone(), free("y")),
                ],
                rat(1, 1),
            )],
        );
        let out = wick_contract(&m, &d).unwrap();
        let expect = series(
            2,
            vec![(vec![RawDiagram::strut(free("x"), free("y"))], rat(7, 1))],
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn wick_tadpole_vanishes() {
        let s = free("s");
        let m = StrutMatrix::new(vec![s.clone()], vec![vec![rat(1, 1)]]).unwrap();
        let d = series(
            2,
            vec![(
                vec![RawDiagram::y(free("x"), s.clone(), s.clone())],
                rat(1, 1),
            )],
        );
        assert!(wick_contract(&m, &d).unwrap().is_zero());
    }

    #[test]
    fn wick_agrees_with_exponential_bracket() {
        // <[M/2], D>_S computed two ways: closed Wick form vs. expanding
        // the exponential and running the finite bracket.
        let s1 = free("s");
        let s2 = free("t");
        let mut m = StrutMatrix::zero(vec![s1.clone(), s2.clone()]);
        m.set_sym(&s1, &s2, rat(2, 1));
        m.set_sym(&s1, &s1, rat(3, 1));
        let d = series(
            2,
            vec![
                (
                    vec![
                        RawDiagram::strut(free("x"), s1.clone()),
                        RawDiagram::strut(s2.clone(), free("y")),
                    ],
                    rat(1, 1),
                ),
                (
                    vec![RawDiagram::y(s1.clone(), s1.clone(), free("z"))],
                    rat(1, 2),
                ),
            ],
        );
        let closed = wick_contract(&m, &d).unwrap();
        // Expansion of [M/2] to two struts: enough for every monomial of d.
        let strut = |a: &Color, b: &Color| RawDiagram::strut(a.clone(), b.clone());
        let e = series(
            2,
            vec![
                (vec![], rat(1, 1)),
                (vec![strut(&s1, &s2)], rat(2, 1)),
                (vec![strut(&s1, &s1)], rat(3, 2)),
                (vec![strut(&s1, &s2), strut(&s1, &s2)], rat(2, 1)),
                (vec![strut(&s1, &s1), strut(&s1, &s2)], rat(3, 1)),
                (vec![strut(&s1, &s1), strut(&s1, &s1)], rat(9, 8)),
            ],
        );
        let via_bracket = contract_finite(&e, &d, &[s1, s2]).unwrap();
        assert_eq!(closed, via_bracket);
    }

    #[test]
    fn gaussian_single_matching() {
        // ∫_s of [c/2 strut(s,s)] ⊔ strut(x,s) ⊔ strut(s,y) = -(1/c) strut(x,y)
        let s = free("s");
        let l = StrutMatrix::new(vec![s.clone()], vec![vec![rat(4, 1)]]).unwrap();
        let p = series(
            2,
            vec![(
                vec![
                    RawDiagram::strut(free("x"), s.clone()),
                    RawDiagram::strut(s.clone(), free("y")),
                ],
                rat(1, 1),
            )],
        );
        let out = gaussian_integrate(&l, &p, &[s]).unwrap();
        let expect = series(
            2,
            vec![(vec![RawDiagram::strut(free("x"), free("y"))], rat(-1, 4))],
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn gaussian_no_legs_is_identity() {
        let s = free("s");
        let l = StrutMatrix::new(vec![s.clone()], vec![vec![rat(2, 1)]]).unwrap();
        let p = series(
            2,
            vec![(
                vec![RawDiagram::y(free("a"), free("b"), free("c"))],
                rat(1, 1),
            )],
        );
        assert_eq!(gaussian_integrate(&l, &p, &[s]).unwrap(), p);
    }

    #[test]
    fn gaussian_rejects_singular() {
        let s = free("s");
        let l = StrutMatrix::new(vec![s.clone()], vec![vec![rat(0, 1)]]).unwrap();
        let p = YSeries::one(2);
        assert!(matches!(
            gaussian_integrate(&l, &p, &[s]),
            Err(PairingError::Singular)
        ));
    }

    #[test]
    fn closure_on_exponentials() {
        let s = free("s");
        let e = series(
            4,
            vec![(
                vec![RawDiagram::y(s.clone(), free("a"), free("b"))],
                rat(1, 1),
            )],
        )
        .exp_union()
        .unwrap();
        let d = series(
            4,
            vec![(
                vec![RawDiagram::y(s.clone(), free("c"), free("d"))],
                rat(1, 1),
            )],
        )
        .exp_union()
        .unwrap();
        assert!(check_group_like_closure(&e, &d, &[s]).unwrap());
    }
}
