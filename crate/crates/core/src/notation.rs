//! The shared textual grammar.
//!
//! Colors print as `1+`, `2-`, `3*` or bare identifiers. Connected diagrams
//! print as `strut(c1,c2)`, `Y(c1,c2,c3)` (listed order = cyclic order),
//! `H(c1,c2|c3,c4)` (legs `c1,c2` at one vertex, `c3,c4` at the other, the
//! internal edge last in both cyclic orders), `bubble(c1,c2)`, `theta`, or
//! the general form `graph{v0:(h0,h1,h2);...;edges{hi-hj;...};legs{hk=c;...}}`.
//! Series print as `q1*m1 + q2*m2 + ...` with `|`-separated components and
//! exact fractions. A shape constructor may differ from the stored canonical
//! orientation by an AS sign; printing folds that sign into the coefficient,
//! so parse ∘ print is the identity on series.

use std::collections::BTreeMap;

use crate::diagram::{canonicalize, Canonical, Color, ConnectedDiagram, RawDiagram};
use crate::error::NotationError;
use crate::matrix::StrutMatrix;
use crate::series::YSeries;
use crate::Rational;

/// Prints a canonical connected diagram, ignoring its orientation sign.
/// Prefer [`diagram_to_string_signed`] when the sign matters.
pub fn diagram_to_string(d: &ConnectedDiagram) -> String {
    diagram_to_string_signed(d).0
}

/// Prints a canonical connected diagram as a shape constructor together
/// with the AS sign `s` such that the printed expression parses back to
/// `s` times `d`.
pub fn diagram_to_string_signed(d: &ConnectedDiagram) -> (String, i8) {
    if let Some(out) = special_shape(d) {
        return out;
    }
    (graph_literal(d), 1)
}

fn special_shape(d: &ConnectedDiagram) -> Option<(String, i8)> {
    let legs = d.leg_colors();
    match (d.ideg(), legs.len()) {
        (0, 2) => {
            let text = format!("strut({},{})", legs[0], legs[1]);
            Some((text, 1))
        }
        (1, 3) => {
            // Try leg orderings until the constructor reproduces the stored
            // diagram; cyclic rotations fix the sign, a swap flips it.
            for perm in permutations3() {
                let (a, b, c) = (
                    legs[perm[0]].clone(),
                    legs[perm[1]].clone(),
                    legs[perm[2]].clone(),
                );
                let raw = RawDiagram::y(a.clone(), b.clone(), c.clone());
                if let Ok(Canonical::Diagram(cd, s)) = canonicalize(&raw) {
                    if cd == *d && s == 1 {
                        return Some((format!("Y({a},{b},{c})"), 1));
                    }
                }
            }
            None
        }
        (2, 0) => {
            let Ok(Canonical::Diagram(cd, s)) = canonicalize(&RawDiagram::theta()) else {
                return None;
            };
            (cd == *d).then(|| ("theta".to_string(), s))
        }
        (2, 2) => {
            let raw = RawDiagram::bubble(legs[0].clone(), legs[1].clone());
            let Ok(Canonical::Diagram(cd, s)) = canonicalize(&raw) else {
                return None;
            };
            (cd == *d).then(|| (format!("bubble({},{})", legs[0], legs[1]), s))
        }
        (2, 4) if d.is_tree() => {
            // Group legs by their vertex, then search the orderings for a
            // +1 representative (an AS flip is always available).
            let raw = d.to_raw();
            let mut at: BTreeMap<usize, Vec<Color>> = BTreeMap::new();
            let mut dart_vertex: BTreeMap<usize, usize> = BTreeMap::new();
            for (v, triple) in raw.triples.iter().enumerate() {
                for &dart in triple {
                    dart_vertex.insert(dart, v);
                }
            }
            let partner: BTreeMap<usize, usize> = raw
                .pairs
                .iter()
                .flat_map(|&(a, b)| [(a, b), (b, a)])
                .collect();
            for (dart, color) in &raw.legs {
                let v = dart_vertex[&partner[dart]];
                at.entry(v).or_default().push(color.clone());
            }
            let groups: Vec<Vec<Color>> = at.into_values().collect();
            if groups.len() != 2 {
                return None;
            }
            for (g1, g2) in [(0usize, 1usize), (1, 0)] {
                for (i, j) in [(0usize, 1usize), (1, 0)] {
                    for (k, l) in [(0usize, 1usize), (1, 0)] {
                        let (a, b) = (groups[g1][i].clone(), groups[g1][j].clone());
                        let (c, dd) = (groups[g2][k].clone(), groups[g2][l].clone());
                        let raw = RawDiagram::h(a.clone(), b.clone(), c.clone(), dd.clone());
                        if let Ok(Canonical::Diagram(cd, 1)) = canonicalize(&raw) {
                            if cd == *d {
                                return Some((format!("H({a},{b}|{c},{dd})"), 1));
                            }
                        }
                    }
                }
            }
            None
        }
        _ => None,
    }
}

fn permutations3() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ]
}

fn graph_literal(d: &ConnectedDiagram) -> String {
    let raw = d.to_raw();
    let mut out = String::from("graph{");
    let vparts: Vec<String> = raw
        .triples
        .iter()
        .enumerate()
        .map(|(v, t)| format!("v{v}:(h{},h{},h{})", t[0], t[1], t[2]))
        .collect();
    out.push_str(&vparts.join(";"));
    if !vparts.is_empty() {
        out.push(';');
    }
    // `edges` lists every half-edge pairing, leg attachments included.
    let eparts: Vec<String> = raw
        .pairs
        .iter()
        .map(|(a, b)| format!("h{a}-h{b}"))
        .collect();
    out.push_str("edges{");
    out.push_str(&eparts.join(";"));
    out.push_str("};legs{");
    let lparts: Vec<String> = raw
        .legs
        .iter()
        .map(|(dart, color)| format!("h{dart}={color}"))
        .collect();
    out.push_str(&lparts.join(";"));
    out.push_str("}}");
    out
}

/// Prints a series in the shared grammar.
pub fn series_to_string(s: &YSeries) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (m, c) in s.terms() {
        let mut coeff = c.clone();
        let text = if m.is_empty() {
            "∅".to_string()
        } else {
            let mut comps = Vec::new();
            for d in m.components() {
                let (t, sign) = diagram_to_string_signed(d);
                if sign < 0 {
                    coeff = -coeff;
                }
                comps.push(t);
            }
            comps.join("|")
        };
        parts.push(format!("{coeff}*{text}"));
    }
    parts.join(" + ")
}

/// Byte-oriented scanner shared by the notation parsers.
pub struct Scanner<'a> {
    text: &'a [u8],
    pub pos: usize,
}

impl<'a> Scanner<'a> {
    pub fn new(text: &'a str) -> Self {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn peek_raw(&self) -> Option<char> {
        if self.pos >= self.text.len() {
            return None;
        }
        // The grammar is ASCII except for ∅; decode it by hand.
        let rest = &self.text[self.pos..];
        if rest.starts_with("∅".as_bytes()) {
            Some('∅')
        } else {
            Some(rest[0] as char)
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek_raw() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), NotationError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(NotationError::new(self.pos, format!("expected `{c}`")))
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    pub fn ident(&mut self) -> Result<String, NotationError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() {
            let c = self.text[self.pos] as char;
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(NotationError::new(start, "expected an identifier"));
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    pub fn integer(&mut self) -> Result<i64, NotationError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek_raw() == Some('-') {
            self.pos += 1;
        }
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        let slice = &self.text[start..self.pos];
        if slice.is_empty() || slice == b"-" {
            return Err(NotationError::new(start, "expected an integer"));
        }
        String::from_utf8_lossy(slice)
            .parse()
            .map_err(|e| NotationError::new(start, format!("bad integer: {e}")))
    }

    pub fn rational(&mut self) -> Result<Rational, NotationError> {
        let num = self.integer()?;
        if self.eat('/') {
            let start = self.pos;
            let den = self.integer()?;
            if den == 0 {
                return Err(NotationError::new(start, "zero denominator"));
            }
            Ok(Rational::new(num.into(), den.into()))
        } else {
            Ok(Rational::from_integer(num.into()))
        }
    }

    pub fn color(&mut self) -> Result<Color, NotationError> {
        self.skip_ws();
        let start = self.pos;
        let c = self
            .peek_raw()
            .ok_or_else(|| NotationError::new(start, "expected a color"))?;
        if c.is_ascii_digit() {
            let idx = self.integer()?;
            if idx < 1 {
                return Err(NotationError::new(start, "color indices start at 1"));
            }
            let idx = idx as u32;
            match self.peek_raw() {
                Some('+') => {
                    self.pos += 1;
                    Ok(Color::plus(idx))
                }
                Some('-') => {
                    self.pos += 1;
                    Ok(Color::minus(idx))
                }
                Some('*') => {
                    self.pos += 1;
                    Ok(Color::star(idx))
                }
                _ => Err(NotationError::new(
                    self.pos,
                    "expected `+`, `-` or `*` after a color index",
                )),
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            Ok(Color::free(self.ident()?))
        } else {
            Err(NotationError::new(start, "expected a color"))
        }
    }
}

/// Parses one connected diagram; returns its canonical form and the AS sign
/// relating the written expression to it, or `None` for a vanishing diagram.
pub fn parse_diagram(sc: &mut Scanner) -> Result<Option<(ConnectedDiagram, i8)>, NotationError> {
    let raw = parse_raw_diagram(sc)?;
    match canonicalize(&raw) {
        Ok(Canonical::Zero) => Ok(None),
        Ok(Canonical::Diagram(d, s)) => Ok(Some((d, s))),
        Err(e) => Err(NotationError::new(sc.pos, e.to_string())),
    }
}

fn parse_raw_diagram(sc: &mut Scanner) -> Result<RawDiagram, NotationError> {
    sc.skip_ws();
    let start = sc.pos;
    let head = sc.ident()?;
    match head.as_str() {
        "strut" => {
            sc.expect('(')?;
            let a = sc.color()?;
            sc.expect(',')?;
            let b = sc.color()?;
            sc.expect(')')?;
            Ok(RawDiagram::strut(a, b))
        }
        "Y" => {
            sc.expect('(')?;
            let a = sc.color()?;
            sc.expect(',')?;
            let b = sc.color()?;
            sc.expect(',')?;
            let c = sc.color()?;
            sc.expect(')')?;
            Ok(RawDiagram::y(a, b, c))
        }
        "H" => {
            sc.expect('(')?;
            let a = sc.color()?;
            sc.expect(',')?;
            let b = sc.color()?;
            sc.expect('|')?;
            let c = sc.color()?;
            sc.expect(',')?;
            let d = sc.color()?;
            sc.expect(')')?;
            Ok(RawDiagram::h(a, b, c, d))
        }
        "bubble" => {
            sc.expect('(')?;
            let a = sc.color()?;
            sc.expect(',')?;
            let b = sc.color()?;
            sc.expect(')')?;
            Ok(RawDiagram::bubble(a, b))
        }
        "theta" => Ok(RawDiagram::theta()),
        "graph" => parse_graph_literal(sc),
        _ => Err(NotationError::new(
            start,
            format!("unknown diagram head `{head}`"),
        )),
    }
}

fn parse_graph_literal(sc: &mut Scanner) -> Result<RawDiagram, NotationError> {
    sc.expect('{')?;
    let mut triples = Vec::new();
    let mut pairs = Vec::new();
    let mut legs = Vec::new();
    loop {
        sc.skip_ws();
        if sc.eat_str("edges") {
            sc.expect('{')?;
            while !sc.eat('}') {
                let a = parse_dart(sc)?;
                sc.expect('-')?;
                let b = parse_dart(sc)?;
                pairs.push((a, b));
                let _ = sc.eat(';');
            }
            sc.expect(';')?;
            sc.eat_str("legs");
            sc.expect('{')?;
            while !sc.eat('}') {
                let d = parse_dart(sc)?;
                sc.expect('=')?;
                let c = sc.color()?;
                legs.push((d, c));
                let _ = sc.eat(';');
            }
            sc.expect('}')?;
            break;
        }
        // vertex entry: vN:(hA,hB,hC);
        let _name = sc.ident()?;
        sc.expect(':')?;
        sc.expect('(')?;
        let a = parse_dart(sc)?;
        sc.expect(',')?;
        let b = parse_dart(sc)?;
        sc.expect(',')?;
        let c = parse_dart(sc)?;
        sc.expect(')')?;
        triples.push([a, b, c]);
        sc.expect(';')?;
    }
    Ok(RawDiagram {
        triples,
        legs,
        pairs,
    })
}

fn parse_dart(sc: &mut Scanner) -> Result<usize, NotationError> {
    sc.skip_ws();
    if !sc.eat('h') {
        return Err(NotationError::new(sc.pos, "expected a half-edge `hN`"));
    }
    let n = sc.integer()?;
    if n < 0 {
        return Err(NotationError::new(sc.pos, "half-edge ids are nonnegative"));
    }
    Ok(n as usize)
}

/// Parses a series in the shared grammar at the given truncation bound.
pub fn parse_series(text: &str, max_ideg: usize) -> Result<YSeries, NotationError> {
    let mut sc = Scanner::new(text);
    let s = parse_series_scanner(&mut sc, max_ideg)?;
    if !sc.at_end() {
        return Err(NotationError::new(sc.pos, "trailing input after series"));
    }
    Ok(s)
}

pub(crate) fn parse_series_scanner(
    sc: &mut Scanner,
    max_ideg: usize,
) -> Result<YSeries, NotationError> {
    sc.skip_ws();
    // A lone `0` denotes the zero series.
    let save = sc.pos;
    if sc.eat('0') {
        match sc.peek() {
            None | Some(';') | Some(')') | Some('\n') => return Ok(YSeries::zero(max_ideg)),
            _ => sc.pos = save,
        }
    }
    let mut out = YSeries::zero(max_ideg);
    loop {
        let coeff = sc.rational()?;
        sc.expect('*')?;
        let mut coeff = coeff;
        let mut comps: Vec<ConnectedDiagram> = Vec::new();
        let mut dead = false;
        if sc.eat('∅') || sc.eat_str("empty") {
            // empty monomial
        } else {
            loop {
                match parse_diagram(sc)? {
                    None => dead = true,
                    Some((d, s)) => {
                        if s < 0 {
                            coeff = -coeff;
                        }
                        comps.push(d);
                    }
                }
                // `|` separates components; H(..|..) consumed its own bar.
                if !sc.eat('|') {
                    break;
                }
            }
        }
        if !dead {
            let reduced = YSeries::reduce(
                max_ideg,
                vec![(comps.iter().map(|d| d.to_raw()).collect(), coeff)],
            )
            .map_err(|e| NotationError::new(sc.pos, e.to_string()))?;
            out = out
                .add(&reduced)
                .map_err(|e| NotationError::new(sc.pos, e.to_string()))?;
        }
        if !sc.eat('+') {
            break;
        }
    }
    Ok(out)
}

/// Prints a strut matrix as `[colors=...; row; row; ...]`.
pub fn matrix_to_string(m: &StrutMatrix) -> String {
    if m.colors().is_empty() {
        return "[]".to_string();
    }
    let colors: Vec<String> = m.colors().iter().map(|c| c.to_string()).collect();
    let mut rows = Vec::new();
    for i in 0..m.colors().len() {
        let row: Vec<String> = (0..m.colors().len())
            .map(|j| m.entry(i, j).to_string())
            .collect();
        rows.push(row.join(","));
    }
    format!("[colors={}; {}]", colors.join(","), rows.join("; "))
}

/// Parses a strut matrix printed by [`matrix_to_string`].
pub fn parse_matrix(text: &str) -> Result<StrutMatrix, NotationError> {
    let mut sc = Scanner::new(text);
    let m = parse_matrix_scanner(&mut sc)?;
    if !sc.at_end() {
        return Err(NotationError::new(sc.pos, "trailing input after matrix"));
    }
    Ok(m)
}

pub(crate) fn parse_matrix_scanner(sc: &mut Scanner) -> Result<StrutMatrix, NotationError> {
    sc.expect('[')?;
    if sc.eat(']') {
        return Ok(StrutMatrix::empty());
    }
    if !sc.eat_str("colors") {
        return Err(NotationError::new(sc.pos, "expected `colors=`"));
    }
    sc.expect('=')?;
    let mut colors = vec![sc.color()?];
    while sc.eat(',') {
        colors.push(sc.color()?);
    }
    sc.expect(';')?;
    let n = colors.len();
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(sc.rational()?);
            if j + 1 < n {
                sc.expect(',')?;
            }
        }
        entries.push(row);
        if i + 1 < n {
            sc.expect(';')?;
        }
    }
    sc.expect(']')?;
    StrutMatrix::new(colors, entries).map_err(|e| NotationError::new(sc.pos, e.to_string()))
}


/// Prints a split element as `W = [matrix]; Y = <series>`.
pub fn element_to_string(e: &crate::tscat::TsElement) -> String {
    format!(
        "W = {}; Y = {}",
        matrix_to_string(e.w()),
        series_to_string(e.y_part())
    )
}

/// Parses a split element printed by [`element_to_string`], at the given
/// truncation. Arities are read off the matrix colors.
pub fn parse_element(
    text: &str,
    max_ideg: usize,
) -> Result<crate::tscat::TsElement, NotationError> {
    let mut sc = Scanner::new(text);
    if !sc.eat('W') {
        return Err(NotationError::new(sc.pos, "expected `W = ...`"));
    }
    sc.expect('=')?;
    let w = parse_matrix_scanner(&mut sc)?;
    sc.expect(';')?;
    if !sc.eat('Y') {
        return Err(NotationError::new(sc.pos, "expected `Y = ...`"));
    }
    sc.expect('=')?;
    let y = parse_series_scanner(&mut sc, max_ideg)?;
    if !sc.at_end() {
        return Err(NotationError::new(sc.pos, "trailing input after element"));
    }
    let g = w
        .colors()
        .iter()
        .filter(|c| matches!(c, crate::diagram::Color::Plus(_)))
        .count();
    let f = w
        .colors()
        .iter()
        .filter(|c| matches!(c, crate::diagram::Color::Minus(_)))
        .count();
    crate::tscat::TsElement::new(g, f, w, y).map_err(|e| NotationError::new(0, e.to_string()))
}
