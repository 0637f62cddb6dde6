//! The IHX quotient, realized by exact elimination.
//!
//! A sector is the span of all canonical connected diagrams with a fixed
//! internal degree and leg-color multiset. IHX instances are generated
//! locally: for an internal edge with half-edges `(x, y)` at one end and
//! `(z, r)` at the other (internal edge last in both cyclic orders), the
//! Jacobi identity reads
//!
//! ```text
//! H(x,y|z,r) + H(y,z|x,r) + H(z,x|y,r) = 0
//! ```
//!
//! where the letters stand for the four attachment half-edges. Reduction of
//! a single diagram works on its rewiring closure: the set of diagrams
//! reachable by IHX rewirings, which is closed under the relations and is
//! usually far smaller than the whole sector. Results are memoized globally;
//! first computation may race, the insert is idempotent.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::diagram::{canonicalize, Canonical, Color, ConnectedDiagram, RawDiagram};
use crate::error::DiagramError;
use crate::Rational;

/// Default cap on the internal degree of sectors enumerated exhaustively.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;

pub type Expansion = Vec<(ConnectedDiagram, Rational)>;

/// Basis data for one (i-deg, leg colors) sector.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    pub ideg: usize,
    pub leg_colors: Vec<Color>,
    /// Canonical diagrams spanning the quotient.
    pub basis: Vec<ConnectedDiagram>,
    /// Expansion of every canonical diagram of the sector over the basis.
    pub reduction: BTreeMap<ConnectedDiagram, Expansion>,
}

impl SectorBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn reduce_memo() -> &'static Mutex<HashMap<ConnectedDiagram, Arc<Expansion>>> {
    static MEMO: OnceLock<Mutex<HashMap<ConnectedDiagram, Arc<Expansion>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn sector_memo() -> &'static Mutex<HashMap<(usize, Vec<Color>), Arc<SectorBasis>>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, Vec<Color>), Arc<SectorBasis>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One IHX instance: a sparse relation among canonical diagrams that is
/// zero in the quotient.
pub type Relation = BTreeMap<ConnectedDiagram, Rational>;

/// Generates the IHX instances seeded at `d`: two relations per internal
/// edge (one per choice of ordering the far end's half-edges).
pub fn ihx_instances(d: &ConnectedDiagram) -> Vec<Relation> {
    let raw = d.to_raw();
    let mut dart_at: HashMap<usize, (usize, usize)> = HashMap::new();
    for (v, triple) in raw.triples.iter().enumerate() {
        for (slot, &dart) in triple.iter().enumerate() {
            dart_at.insert(dart, (v, slot));
        }
    }
    let t = raw.triples.len();
    let mut out = Vec::new();
    for &(a, b) in &raw.pairs {
        let (Some(&(u, su)), Some(&(v, sv))) = (dart_at.get(&a), dart_at.get(&b)) else {
            continue; // a leg end: not an internal edge
        };
        let _ = t;
        if u == v {
            continue; // self-loops never occur in canonical diagrams
        }
        // Rotate so the internal edge sits last: (x, y, e) and (z, r, e).
        let tu = raw.triples[u];
        let tv = raw.triples[v];
        let x = tu[(su + 1) % 3];
        let y = tu[(su + 2) % 3];
        let z = tv[(sv + 1) % 3];
        let r = tv[(sv + 2) % 3];
        for (z, r, base_sign) in [(z, r, 1i64), (r, z, -1i64)] {
            // H(x,y|z,r) + H(y,z|x,r) + H(z,x|y,r) = 0, with the first term
            // equal to `base_sign` times `d`.
            let mut relation: Relation = BTreeMap::new();
            add_term(
                &mut relation,
                d.clone(),
                Rational::from_integer(base_sign.into()),
            );
            for (nu, nv) in [([y, z, a], [x, r, b]), ([z, x, a], [y, r, b])] {
                let mut rewired = raw.clone();
                rewired.triples[u] = nu;
                rewired.triples[v] = nv;
                match canonicalize(&rewired).expect("rewiring preserves well-formedness") {
                    Canonical::Zero => {}
                    Canonical::Diagram(partner, s) => {
                        add_term(
                            &mut relation,
                            partner,
                            Rational::from_integer(i64::from(s).into()),
                        );
                    }
                }
            }
            if !relation.is_empty() {
                out.push(relation);
            }
        }
    }
    out
}

fn add_term(rel: &mut Relation, d: ConnectedDiagram, c: Rational) {
    use std::collections::btree_map::Entry;
    match rel.entry(d) {
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

/// The IHX rewiring closure of `d` together with all relations among its
/// members.
fn ihx_closure(d: &ConnectedDiagram) -> (Vec<ConnectedDiagram>, Vec<Relation>) {
    let mut seen: BTreeSet<ConnectedDiagram> = BTreeSet::new();
    let mut queue = vec![d.clone()];
    seen.insert(d.clone());
    let mut relations = Vec::new();
    while let Some(current) = queue.pop() {
        for rel in ihx_instances(&current) {
            for partner in rel.keys() {
                if seen.insert(partner.clone()) {
                    queue.push(partner.clone());
                }
            }
            relations.push(rel);
        }
    }
    (seen.into_iter().collect(), relations)
}

/// Row-reduces the relations over the ordered diagram list and returns, for
/// every diagram, its expansion over the surviving (non-pivot) diagrams.
fn eliminate(diagrams: &[ConnectedDiagram], relations: &[Relation]) -> Vec<Expansion> {
    let index: BTreeMap<&ConnectedDiagram, usize> =
        diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let rows: Vec<BTreeMap<usize, Rational>> = relations
        .iter()
        .map(|rel| rel.iter().map(|(d, c)| (index[d], c.clone())).collect())
        .collect();
    // Forward pass to echelon form, pivot rows keyed by leading column.
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                break;
            };
            match pivots.get(&lead) {
                Some(pivot_row) => {
                    let factor = row[&lead].clone();
                    let pivot_row = pivot_row.clone();
                    for (col, coeff) in pivot_row {
                        let entry = row.entry(col).or_insert_with(Rational::zero);
                        *entry -= &factor * &coeff;
                    }
                    row.retain(|_, v| !v.is_zero());
                }
                None => {
                    let lead_coeff = row[&lead].clone();
                    for v in row.values_mut() {
                        *v /= &lead_coeff;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    // Backward pass: clear pivot columns from earlier rows, largest lead
    // first, so each pivot row ends up supported on free columns only.
    let leads: Vec<usize> = pivots.keys().cloned().collect();
    for &lead in leads.iter().rev() {
        let row = pivots[&lead].clone();
        for &earlier in leads.iter().filter(|&&l| l < lead) {
            let target = pivots.get_mut(&earlier).unwrap();
            if let Some(factor) = target.get(&lead).cloned() {
                for (col, coeff) in &row {
                    let entry = target.entry(*col).or_insert_with(Rational::zero);
                    *entry -= &factor * coeff;
                }
                target.retain(|_, v| !v.is_zero());
            }
        }
    }
    diagrams
        .iter()
        .enumerate()
        .map(|(i, d)| {
            if let Some(row) = pivots.get(&i) {
                row.iter()
                    .filter(|(col, _)| **col != i)
                    .map(|(col, c)| (diagrams[*col].clone(), -c))
                    .collect()
            } else {
                vec![(d.clone(), Rational::one())]
            }
        })
        .collect()
}

/// Expands a canonical connected diagram over its IHX sector basis.
/// Memoized; the quotient is computed on the rewiring closure of `d`.
pub fn reduce_component(d: &ConnectedDiagram) -> Arc<Expansion> {
    if let Some(hit) = reduce_memo().lock().unwrap().get(d) {
        return hit.clone();
    }
    if d.ideg() <= 1 {
        // Struts and single-vertex diagrams admit no IHX instance.
        let exp: Arc<Expansion> = Arc::new(vec![(d.clone(), Rational::one())]);
        reduce_memo().lock().unwrap().insert(d.clone(), exp.clone());
        return exp;
    }
    let (diagrams, relations) = ihx_closure(d);
    let expansions = eliminate(&diagrams, &relations);
    let mut memo = reduce_memo().lock().unwrap();
    let mut result = None;
    for (diag, exp) in diagrams.into_iter().zip(expansions) {
        let arc = memo
            .entry(diag.clone())
            .or_insert_with(|| Arc::new(exp))
            .clone();
        if diag == *d {
            result = Some(arc);
        }
    }
    result.expect("closure contains the seed")
}

/// Enumerates every canonical connected diagram with the given internal
/// degree and leg colors, and computes the quotient data for the sector.
pub fn sector_basis(ideg: usize, leg_colors: &[Color]) -> Result<Arc<SectorBasis>, DiagramError> {
    sector_basis_with_limit(ideg, leg_colors, DEFAULT_ENUMERATION_LIMIT)
}

pub fn sector_basis_with_limit(
    ideg: usize,
    leg_colors: &[Color],
    limit: usize,
) -> Result<Arc<SectorBasis>, DiagramError> {
    if ideg > limit {
        return Err(DiagramError::EnumerationLimit { ideg, limit });
    }
    let mut colors = leg_colors.to_vec();
    colors.sort();
    let key = (ideg, colors.clone());
    if let Some(hit) = sector_memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let diagrams = enumerate_sector(ideg, &colors);
    let mut reduction = BTreeMap::new();
    let mut basis = Vec::new();
    for d in &diagrams {
        let exp = reduce_component(d);
        if exp.len() == 1 && exp[0].0 == *d && exp[0].1.is_one() {
            basis.push(d.clone());
        }
        reduction.insert(d.clone(), exp.as_ref().clone());
    }
    let out = Arc::new(SectorBasis {
        ideg,
        leg_colors: colors,
        basis,
        reduction,
    });
    let mut memo = sector_memo().lock().unwrap();
    let entry = memo.entry(key).or_insert_with(|| out.clone());
    Ok(entry.clone())
}

/// All canonical connected nonzero diagrams in the sector, by brute-force
/// enumeration of half-edge pairings.
pub(crate) fn enumerate_sector(ideg: usize, colors: &[Color]) -> Vec<ConnectedDiagram> {
    let t = ideg;
    let u = colors.len();
    let darts = 3 * t + u;
    if darts % 2 != 0 || darts == 0 {
        return Vec::new();
    }
    let triples: Vec<[usize; 3]> = (0..t).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
    let legs: Vec<(usize, Color)> = colors
        .iter()
        .enumerate()
        .map(|(j, c)| (3 * t + j, c.clone()))
        .collect();
    let mut found: BTreeSet<ConnectedDiagram> = BTreeSet::new();
    let mut taken = vec![false; darts];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(darts / 2);
    fn rec(
        darts: usize,
        taken: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        triples: &[[usize; 3]],
        legs: &[(usize, Color)],
        found: &mut BTreeSet<ConnectedDiagram>,
    ) {
        let Some(first) = taken.iter().position(|&b| !b) else {
            let raw = RawDiagram {
                triples: triples.to_vec(),
                legs: legs.to_vec(),
                pairs: pairs.clone(),
            };
            match canonicalize(&raw) {
                Ok(Canonical::Diagram(d, _)) => {
                    found.insert(d);
                }
                Ok(Canonical::Zero) | Err(DiagramError::Disconnected) => {}
                Err(e) => panic!("enumeration built a malformed diagram: {e}"),
            }
            return;
        };
        taken[first] = true;
        for second in (first + 1)..darts {
            if taken[second] {
                continue;
            }
            taken[second] = true;
            pairs.push((first, second));
            rec(darts, taken, pairs, triples, legs, found);
            pairs.pop();
            taken[second] = false;
        }
        taken[first] = false;
    }
    rec(darts, &mut taken, &mut pairs, &triples, &legs, &mut found);
    found.into_iter().collect()
}
