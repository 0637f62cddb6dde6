//! The category of top-substantial Jacobi diagrams.
//!
//! A morphism value from source arity `g` to target arity `f` is stored in
//! split form `[W/2] ⊔ yPart`: a symmetric strut matrix `W` over the colors
//! `1+..g+, 1-..f-` with vanishing plus/plus block, and a strut-free series
//! over the same colors. Composition follows the split law: the matrix
//! blocks compose as
//!
//! ```text
//! (0,          B⁺⁻A⁺⁻;
//!  A⁻⁺B⁻⁺,     A⁻⁻ + A⁻⁺B⁻⁻A⁺⁻)
//! ```
//!
//! and the Y-parts combine through the generalized star product, a
//! contraction over an auxiliary star-colored copy of the middle arity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::diagram::Color;
use crate::error::TsError;
use crate::matrix::{block_add, block_mul, StrutMatrix};
use crate::pairing::contract_finite;
use crate::series::{ColorMap, YSeries};
use crate::Rational;

/// A split morphism value of the top-substantial category.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TsElement {
    g: usize,
    f: usize,
    w: StrutMatrix,
    y: YSeries,
}

/// The color list `1-..f-, 1+..g+` carried by an element of arities (g, f).
pub fn element_colors(g: usize, f: usize) -> Vec<Color> {
    let mut colors = Vec::with_capacity(g + f);
    for i in 1..=f {
        colors.push(Color::minus(i as u32));
    }
    for i in 1..=g {
        colors.push(Color::plus(i as u32));
    }
    colors
}

fn plus_colors(g: usize) -> Vec<Color> {
    (1..=g).map(|i| Color::plus(i as u32)).collect()
}

fn minus_colors(f: usize) -> Vec<Color> {
    (1..=f).map(|i| Color::minus(i as u32)).collect()
}

fn star_colors(g: usize) -> Vec<Color> {
    (1..=g).map(|i| Color::star(i as u32)).collect()
}

impl TsElement {
    /// Validates and builds a split element.
    pub fn new(g: usize, f: usize, w: StrutMatrix, y: YSeries) -> Result<Self, TsError> {
        if w.colors() != element_colors(g, f) {
            return Err(TsError::BadMatrixShape { g, f });
        }
        if !w.is_symmetric() {
            return Err(TsError::BadMatrixShape { g, f });
        }
        for a in plus_colors(g) {
            for b in plus_colors(g) {
                if !w.get(&a, &b).is_zero() {
                    return Err(TsError::NotTopSubstantial(a, b));
                }
            }
        }
        y.check_strut_free().map_err(TsError::Diagram)?;
        let allowed = element_colors(g, f);
        for c in y.occurring_colors() {
            if !allowed.contains(&c) {
                return Err(TsError::ForeignColor(c));
            }
        }
        Ok(TsElement { g, f, w, y })
    }

    /// The identity of the object `g`: antidiagonal pairing struts and an
    /// empty Y-part.
    pub fn identity(g: usize, max_ideg: usize) -> Self {
        TsElement {
            g,
            f: g,
            w: StrutMatrix::identity_pairing(g),
            y: YSeries::one(max_ideg),
        }
    }

    pub fn source_arity(&self) -> usize {
        self.g
    }

    pub fn target_arity(&self) -> usize {
        self.f
    }

    pub fn w(&self) -> &StrutMatrix {
        &self.w
    }

    pub fn y_part(&self) -> &YSeries {
        &self.y
    }

    pub fn max_ideg(&self) -> usize {
        self.y.max_ideg()
    }

    pub fn is_group_like(&self) -> Result<bool, TsError> {
        self.y.is_group_like().map_err(TsError::Diagram)
    }

    /// Re-truncates to a lower i-degree bound.
    pub fn truncated(&self, max_ideg: usize) -> TsElement {
        TsElement {
            g: self.g,
            f: self.f,
            w: self.w.clone(),
            y: self.y.truncated(max_ideg),
        }
    }

    /// Monoidal product: arities add, the second factor's colors shift.
    pub fn tensor(a: &TsElement, b: &TsElement) -> Result<TsElement, TsError> {
        if a.max_ideg() != b.max_ideg() {
            return Err(TsError::TruncationMismatch(a.max_ideg(), b.max_ideg()));
        }
        let g = a.g + b.g;
        let f = a.f + b.f;
        let mut w = StrutMatrix::zero(element_colors(g, f));
        let copy = |w: &mut StrutMatrix, src: &StrutMatrix, dg: usize, df: usize| {
            let cs = src.colors().to_vec();
            for (i, ci) in cs.iter().enumerate() {
                for (j, cj) in cs.iter().enumerate().skip(i) {
                    let q = src.entry(i, j).clone();
                    if q.is_zero() {
                        continue;
                    }
                    let shift = |c: &Color| match c {
                        Color::Plus(k) => Color::plus(k + dg as u32),
                        Color::Minus(k) => Color::minus(k + df as u32),
                        other => other.clone(),
                    };
                    w.set_sym(&shift(ci), &shift(cj), q);
                }
            }
        };
        copy(&mut w, &a.w, 0, 0);
        copy(&mut w, &b.w, a.g, a.f);
        let sigma: ColorMap =
            b.y.occurring_colors()
                .into_iter()
                .map(|c| {
                    let target = match &c {
                        Color::Plus(k) => Color::plus(k + a.g as u32),
                        Color::Minus(k) => Color::minus(k + a.f as u32),
                        other => other.clone(),
                    };
                    (c, vec![(Rational::one(), target)])
                })
                .collect();
        let b_shifted = b.y.recolor_affine(&sigma).map_err(TsError::Diagram)?;
        let y = a.y.disjoint_union(&b_shifted).map_err(TsError::Diagram)?;
        TsElement::new(g, f, w, y)
    }

    /// Composition `a ∘ b` for `a` of arities (g, f) and `b` of arities
    /// (h, g): contraction of a's plus legs against b's minus legs.
    /// Truncated composition equals the truncation of the exact one since
    /// gluing never lowers the i-degree.
    pub fn compose(a: &TsElement, b: &TsElement) -> Result<TsElement, TsError> {
        if a.g != b.f {
            return Err(TsError::ArityMismatch {
                left: a.g,
                right: b.f,
            });
        }
        if a.max_ideg() != b.max_ideg() {
            return Err(TsError::TruncationMismatch(a.max_ideg(), b.max_ideg()));
        }
        let (g, f, h) = (a.g, a.f, b.g);
        let a_pm = a.w.block(&plus_colors(g), &minus_colors(f)); // A+-  g x f
        let a_mp = a.w.block(&minus_colors(f), &plus_colors(g)); // A-+  f x g
        let a_mm = a.w.block(&minus_colors(f), &minus_colors(f)); // A-- f x f
        let b_pm = b.w.block(&plus_colors(h), &minus_colors(g)); // B+-  h x g
        let b_mm = b.w.block(&minus_colors(g), &minus_colors(g)); // B-- g x g

        // W' blocks per the split composition law.
        let pm = block_mul(&b_pm, &a_pm, f); // h x f
        let mm = block_add(&a_mm, &block_mul(&a_mp, &block_mul(&b_mm, &a_pm, f), f));
        let mut w = StrutMatrix::zero(element_colors(h, f));
        for (i, ci) in plus_colors(h).iter().enumerate() {
            for (j, cj) in minus_colors(f).iter().enumerate() {
                if !pm[i][j].is_zero() {
                    w.set_sym(ci, cj, pm[i][j].clone());
                }
            }
        }
        for (i, ci) in minus_colors(f).iter().enumerate() {
            for (j, cj) in minus_colors(f).iter().enumerate().skip(i) {
                if !mm[i][j].is_zero() {
                    w.set_sym(ci, cj, mm[i][j].clone());
                }
            }
        }
        let y = star_with_blocks(&a.y, &b.y, g, f, h, &a_mp, &b_pm, &b_mm)?;
        TsElement::new(h, f, w, y)
    }

    /// Kills every plus and minus color in the Y-part; the strut matrix
    /// drops out since each of its struts carries signed colors.
    pub fn fill_in(&self) -> Result<YSeries, TsError> {
        let sigma: ColorMap = self
            .y
            .occurring_colors()
            .into_iter()
            .map(|c| (c, vec![]))
            .collect();
        self.y.recolor_affine(&sigma).map_err(TsError::Diagram)
    }
}

/// The generalized star product for split composition, with the matrix
/// blocks passed explicitly: `A-+` is f x g, `B+-` is h x g, `B--` is g x g.
#[allow(clippy::too_many_arguments)]
fn star_with_blocks(
    x: &YSeries,
    y: &YSeries,
    g: usize,
    f: usize,
    h: usize,
    a_mp: &[Vec<Rational>],
    b_pm: &[Vec<Rational>],
    b_mm: &[Vec<Rational>],
) -> Result<YSeries, TsError> {
    // x / i+ -> i* + B+-·i- + A-+B--·i-
    let a_mp_b_mm = block_mul(a_mp, b_mm, g); // f x g
    let mut sigma_x: ColorMap = BTreeMap::new();
    for i in 1..=g {
        let mut targets = vec![(Rational::one(), Color::star(i as u32))];
        for j in 1..=h {
            let wgt = b_pm[j - 1][i - 1].clone();
            if !wgt.is_zero() {
                targets.push((wgt, Color::plus(j as u32)));
            }
        }
        for k in 1..=f {
            let wgt = a_mp_b_mm[k - 1][i - 1].clone();
            if !wgt.is_zero() {
                targets.push((wgt, Color::minus(k as u32)));
            }
        }
        sigma_x.insert(Color::plus(i as u32), targets);
    }
    for k in 1..=f {
        let c = Color::minus(k as u32);
        sigma_x.insert(c.clone(), vec![(Rational::one(), c)]);
    }
    let x_sub = x.recolor_affine(&sigma_x).map_err(TsError::Diagram)?;

    // y / i- -> i* + A-+·i+  (the i+ here are h-side colors of y itself)
    let mut sigma_y: ColorMap = BTreeMap::new();
    for i in 1..=g {
        let mut targets = vec![(Rational::one(), Color::star(i as u32))];
        for k in 1..=f {
            let wgt = a_mp[k - 1][i - 1].clone();
            if !wgt.is_zero() {
                targets.push((wgt, Color::minus(k as u32)));
            }
        }
        sigma_y.insert(Color::minus(i as u32), targets);
    }
    for j in 1..=h {
        let c = Color::plus(j as u32);
        sigma_y.insert(c.clone(), vec![(Rational::one(), c)]);
    }
    let y_sub = y.recolor_affine(&sigma_y).map_err(TsError::Diagram)?;

    // ([B--/2] / i- -> i*) expanded far enough to exhaust x's star legs.
    let max_stars = x_sub
        .terms()
        .map(|(m, _)| {
            star_colors(g)
                .iter()
                .map(|c| m.count_color(c))
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0);
    let b_mm_stars = {
        let mut m = StrutMatrix::zero(star_colors(g));
        for i in 1..=g {
            for j in i..=g {
                let q = b_mm[i - 1][j - 1].clone();
                if !q.is_zero() {
                    m.set_sym(&Color::star(i as u32), &Color::star(j as u32), q);
                }
            }
        }
        m
    };
    let exp_side = strut_exponential(&b_mm_stars, max_stars / 2, x.max_ideg());
    let d_side = exp_side.disjoint_union(&y_sub).map_err(TsError::Diagram)?;
    let out = contract_finite(&x_sub, &d_side, &star_colors(g))?;
    Ok(out)
}

/// Expands `[M/2]` to at most `max_struts` strut factors: the sum of
/// `base^k / k!` where `base` has one strut per unordered color pair,
/// diagonal entries halved.
pub fn strut_exponential(m: &StrutMatrix, max_struts: usize, max_ideg: usize) -> YSeries {
    let colors = m.colors();
    let mut base = YSeries::zero(max_ideg);
    let mut terms: Vec<(Vec<crate::diagram::RawDiagram>, Rational)> = Vec::new();
    for (i, ci) in colors.iter().enumerate() {
        for (j, cj) in colors.iter().enumerate().skip(i) {
            let q = m.entry(i, j).clone();
            if q.is_zero() {
                continue;
            }
            let weight = if i == j {
                q / Rational::from_integer(2.into())
            } else {
                q
            };
            terms.push((
                vec![crate::diagram::RawDiagram::strut(ci.clone(), cj.clone())],
                weight,
            ));
        }
    }
    if !terms.is_empty() {
        base = YSeries::reduce(max_ideg, terms).expect("struts are well-formed");
    }
    let mut acc = YSeries::one(max_ideg);
    let mut power = YSeries::one(max_ideg);
    let mut factorial = Rational::one();
    for k in 1..=max_struts {
        power = power.disjoint_union(&base).expect("same truncation");
        if power.is_zero() {
            break;
        }
        factorial *= Rational::from_integer(k.into());
        acc = acc
            .add(&power.scale(&factorial.recip()))
            .expect("same truncation");
    }
    acc
}

/// The generalized star product `x ⋆^{A,B} y` with full matrices: `A` over
/// `g+ ∪ f-` and `B` over `h+ ∪ g-`, both symmetric with zero plus/plus
/// block.
pub fn star_ab(
    x: &YSeries,
    y: &YSeries,
    a: &StrutMatrix,
    b: &StrutMatrix,
) -> Result<YSeries, TsError> {
    let count = |m: &StrutMatrix, plus: bool| {
        m.colors()
            .iter()
            .filter(|c| matches!(c, Color::Plus(_)) == plus)
            .count()
    };
    let g = count(a, true);
    let f = count(a, false);
    let h = count(b, true);
    let g2 = count(b, false);
    if g != g2 || a.colors() != element_colors(g, f) || b.colors() != element_colors(h, g) {
        return Err(TsError::BadMatrixShape { g, f });
    }
    for m in [a, b] {
        if !m.is_symmetric() {
            return Err(TsError::BadMatrixShape { g, f });
        }
        let plus: Vec<Color> = m
            .colors()
            .iter()
            .filter(|c| matches!(c, Color::Plus(_)))
            .cloned()
            .collect();
        for pa in &plus {
            for pb in &plus {
                if !m.get(pa, pb).is_zero() {
                    return Err(TsError::NotTopSubstantial(pa.clone(), pb.clone()));
                }
            }
        }
    }
    let a_mp = a.block(&minus_colors(f), &plus_colors(g));
    let b_pm = b.block(&plus_colors(h), &minus_colors(g));
    let b_mm = b.block(&minus_colors(g), &minus_colors(g));
    star_with_blocks(x, y, g, f, h, &a_mp, &b_pm, &b_mm)
}

/// The plain star product on `A^Y(g+ ∪ g-)`:
/// `x ⋆ y = ⟨x / i+ -> i* + i+, y / i- -> i* + i-⟩_{g*}`.
pub fn star(x: &YSeries, y: &YSeries, g: usize) -> Result<YSeries, TsError> {
    let mut sigma_x: ColorMap = BTreeMap::new();
    let mut sigma_y: ColorMap = BTreeMap::new();
    for i in 1..=g {
        let (p, m, s) = (
            Color::plus(i as u32),
            Color::minus(i as u32),
            Color::star(i as u32),
        );
        sigma_x.insert(
            p.clone(),
            vec![(Rational::one(), s.clone()), (Rational::one(), p.clone())],
        );
        sigma_x.insert(m.clone(), vec![(Rational::one(), m.clone())]);
        sigma_y.insert(m.clone(), vec![(Rational::one(), s), (Rational::one(), m)]);
        sigma_y.insert(p.clone(), vec![(Rational::one(), p)]);
    }
    let x_sub = x.recolor_affine(&sigma_x).map_err(TsError::Diagram)?;
    let y_sub = y.recolor_affine(&sigma_y).map_err(TsError::Diagram)?;
    Ok(contract_finite(&x_sub, &y_sub, &star_colors(g))?)
}

/// Star inverse of a series with empty-diagram coefficient 1, computed
/// degree by degree; the defining property `x ⋆ inv = ∅` holds exactly at
/// the truncation.
pub fn star_inverse(x: &YSeries, g: usize) -> Result<YSeries, TsError> {
    if !x.unit_coefficient().is_one() {
        return Err(TsError::NotUnital);
    }
    let max_ideg = x.max_ideg();
    let mut inv = YSeries::one(max_ideg);
    for n in 1..=max_ideg {
        let product = star(x, &inv, g)?;
        let defect = product.ideg_part(n);
        if !defect.is_zero() {
            inv = inv.sub(&defect).map_err(TsError::Diagram)?;
        }
    }
    debug_assert_eq!(star(x, &inv, g)?, YSeries::one(max_ideg));
    Ok(inv)
}


impl std::fmt::Display for TsElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::notation::element_to_string(self))
    }
}
