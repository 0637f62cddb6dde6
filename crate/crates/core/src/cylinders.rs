//! Homology-cylinder arithmetic on invariant values: the star monoid, the
//! first Johnson homomorphism read off the degree-one part, the theta
//! coefficient, the Casson invariant of filled cylinders, and the Morita
//! composition formula.

use crate::diagram::{canonicalize, Canonical, RawDiagram};
use crate::error::TsError;
use crate::generators::{GeneratorName, GeneratorTable};
use crate::matrix::StrutMatrix;
use crate::series::{Monomial, YSeries};
use crate::tscat::{star, TsElement};
use crate::Rational;

/// The invariant value of a homology cylinder: genus plus the strut-free
/// part; the linking part is the antidiagonal pairing by definition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CylinderValue {
    genus: usize,
    y: YSeries,
}

impl CylinderValue {
    pub fn new(genus: usize, y: YSeries) -> Result<Self, TsError> {
        // Validation via the element constructor.
        let ts = TsElement::new(genus, genus, StrutMatrix::identity_pairing(genus), y)?;
        Ok(CylinderValue {
            genus,
            y: ts.y_part().clone(),
        })
    }

    /// The value of the trivial cylinder.
    pub fn trivial(genus: usize, max_ideg: usize) -> Self {
        CylinderValue {
            genus,
            y: YSeries::one(max_ideg),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn y_part(&self) -> &YSeries {
        &self.y
    }

    pub fn max_ideg(&self) -> usize {
        self.y.max_ideg()
    }

    pub fn to_ts(&self) -> TsElement {
        TsElement::new(
            self.genus,
            self.genus,
            StrutMatrix::identity_pairing(self.genus),
            self.y.clone(),
        )
        .expect("cylinder values are valid elements")
    }

    pub fn from_ts(a: &TsElement) -> Option<CylinderValue> {
        if is_cylinder(a) {
            Some(CylinderValue {
                genus: a.source_arity(),
                y: a.y_part().clone(),
            })
        } else {
            None
        }
    }
}

/// A split element is a cylinder value exactly when its arities agree and
/// its strut matrix is the antidiagonal pairing.
pub fn is_cylinder(a: &TsElement) -> bool {
    a.source_arity() == a.target_arity()
        && *a.w() == StrutMatrix::identity_pairing(a.source_arity())
}

/// Composition of cylinder values: the star product of the Y-parts.
pub fn cyl_compose(a: &CylinderValue, b: &CylinderValue) -> Result<CylinderValue, TsError> {
    if a.genus != b.genus {
        return Err(TsError::ArityMismatch {
            left: a.genus,
            right: b.genus,
        });
    }
    let y = star(&a.y, &b.y, a.genus)?;
    Ok(CylinderValue { genus: a.genus, y })
}

/// The degree-one part of the logarithm: a rational combination of
/// one-vertex trees, the first Johnson homomorphism of the cylinder.
pub fn tau1(a: &CylinderValue) -> Result<YSeries, TsError> {
    Ok(a.y.log_union().map_err(TsError::Diagram)?.ideg_part(1))
}

/// The canonical closed two-vertex diagram as a monomial.
pub fn theta_monomial() -> (Monomial, i8) {
    match canonicalize(&RawDiagram::theta()).expect("theta is well-formed") {
        Canonical::Diagram(d, s) => (Monomial::single(d), s),
        Canonical::Zero => unreachable!("theta does not vanish"),
    }
}

/// Coefficient of the theta diagram, under the fixed cyclic-order
/// convention of the theta constructor.
pub fn theta_coefficient(x: &YSeries) -> Rational {
    let (m, s) = theta_monomial();
    let c = x.coefficient_raw(&m);
    if s < 0 {
        -c
    } else {
        c
    }
}

/// The Casson invariant of a filled value of arities (0, 0):
/// twice the theta coefficient.
pub fn casson_lambda(a: &TsElement) -> Result<Rational, TsError> {
    if a.source_arity() != 0 || a.target_arity() != 0 {
        return Err(TsError::ArityMismatch {
            left: a.source_arity(),
            right: a.target_arity(),
        });
    }
    if a.max_ideg() < 2 {
        return Err(TsError::Diagram(
            crate::error::DiagramError::TruncationMismatch(a.max_ideg(), 2),
        ));
    }
    Ok(theta_coefficient(a.y_part()) * Rational::from_integer(2.into()))
}

/// Fills a genus-g element into a cube: composes with `ε^{⊗g}` below and
/// `η^{⊗g}` above, through the table values.
pub fn fill_with_table(a: &TsElement, table: &GeneratorTable) -> Result<TsElement, TsError> {
    let g = a.source_arity();
    assert_eq!(g, a.target_arity(), "fill-in needs equal arities");
    let max_ideg = a.max_ideg();
    let eps = table
        .value_of(GeneratorName::Eps)
        .map_err(|_| TsError::ArityMismatch { left: 1, right: 0 })?
        .truncated(max_ideg);
    let eta = table
        .value_of(GeneratorName::Eta)
        .map_err(|_| TsError::ArityMismatch { left: 0, right: 1 })?
        .truncated(max_ideg);
    let mut eps_g = TsElement::identity(0, max_ideg);
    let mut eta_g = TsElement::identity(0, max_ideg);
    for _ in 0..g {
        eps_g = TsElement::tensor(&eps_g, &eps)?;
        eta_g = TsElement::tensor(&eta_g, &eta)?;
    }
    let lower = TsElement::compose(&eps_g, a)?;
    TsElement::compose(&lower, &eta_g)
}

/// Both sides of the composition formula for the Casson invariant of
/// filled cylinders:
///
/// ```text
/// λ(fill(M∘N)) = λ(fill M) + λ(fill N) + 2·θ-coefficient(τ₁(M) ⋆ τ₁(N))
/// ```
pub fn morita_check(
    m: &CylinderValue,
    n: &CylinderValue,
    table: &GeneratorTable,
) -> Result<(Rational, Rational, bool), TsError> {
    let composed = cyl_compose(m, n)?;
    let lhs = casson_lambda(&fill_with_table(&composed.to_ts(), table)?)?;
    let lam_m = casson_lambda(&fill_with_table(&m.to_ts(), table)?)?;
    let lam_n = casson_lambda(&fill_with_table(&n.to_ts(), table)?)?;
    let cross = star(&tau1(m)?, &tau1(n)?, m.genus)?;
    let rhs = lam_m + lam_n + theta_coefficient(&cross) * Rational::from_integer(2.into());
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}
