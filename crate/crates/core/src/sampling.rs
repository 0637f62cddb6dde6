//! Seeded random generation of diagrams, series and split elements, shared
//! by the property-test suites and the CLI check subcommands.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cylinders::CylinderValue;
use crate::diagram::{canonicalize, Canonical, Color, ConnectedDiagram, RawDiagram};
use crate::matrix::StrutMatrix;
use crate::series::YSeries;
use crate::tscat::{element_colors, TsElement};
use crate::{rat, Rational};

/// A deterministic sampler over a fixed seed.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Small nonzero rational with numerator in `[-max, max]` and
    /// denominator in `{1, 2, 3}`.
    pub fn rational(&mut self, max: i64) -> Rational {
        let mut num = 0;
        while num == 0 {
            num = self.rng.gen_range(-max..=max);
        }
        let den = *[1i64, 2, 3].choose(&mut self.rng).unwrap();
        rat(num, den)
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn bool(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A random connected strutless diagram with the given internal degree
    /// and legs colored from the palette. Leg count is chosen so the
    /// pairing exists; retries until a nonzero connected diagram appears.
    pub fn connected_diagram(
        &mut self,
        ideg: usize,
        palette: &[Color],
        max_legs: usize,
    ) -> Option<ConnectedDiagram> {
        assert!(ideg >= 1, "strutless diagrams have positive i-degree");
        for _ in 0..400 {
            let max_here = (ideg + 2).min(max_legs.max(1));
            let mut legs = self.usize_in(1, max_here);
            if (3 * ideg + legs) % 2 != 0 {
                if legs == max_here && legs >= 2 {
                    legs -= 1;
                } else {
                    legs += 1;
                }
            }
            if 3 * ideg < legs {
                continue;
            }
            let colors: Vec<Color> = (0..legs)
                .map(|_| palette[self.rng.gen_range(0..palette.len())].clone())
                .collect();
            let triples: Vec<[usize; 3]> =
                (0..ideg).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
            let leg_list: Vec<(usize, Color)> = colors
                .iter()
                .enumerate()
                .map(|(i, c)| (3 * ideg + i, c.clone()))
                .collect();
            let mut darts: Vec<usize> = (0..3 * ideg + legs).collect();
            darts.shuffle(&mut self.rng);
            let pairs: Vec<(usize, usize)> = darts.chunks(2).map(|w| (w[0], w[1])).collect();
            let raw = RawDiagram {
                triples,
                legs: leg_list,
                pairs,
            };
            match canonicalize(&raw) {
                Ok(Canonical::Diagram(d, _)) => return Some(d),
                _ => continue,
            }
        }
        None
    }

    /// A random primitive series: a few connected monomials with small
    /// coefficients, i-degrees in `1..=max_ideg`.
    pub fn primitive_series(
        &mut self,
        max_ideg: usize,
        palette: &[Color],
        terms: usize,
        max_legs: usize,
    ) -> YSeries {
        let mut out = YSeries::zero(max_ideg);
        for _ in 0..terms {
            let ideg = self.usize_in(1, max_ideg.max(1));
            if let Some(d) = self.connected_diagram(ideg, palette, max_legs) {
                let coeff = self.rational(3);
                let single = YSeries::reduce(max_ideg, vec![(vec![d.to_raw()], coeff)])
                    .expect("sampled diagrams are well-formed");
                out = out.add(&single).expect("same truncation");
            }
        }
        out
    }

    /// A random group-like series: the exponential of a primitive one.
    pub fn group_like(
        &mut self,
        max_ideg: usize,
        palette: &[Color],
        terms: usize,
        max_legs: usize,
    ) -> YSeries {
        self.primitive_series(max_ideg, palette, terms, max_legs)
            .exp_union()
            .expect("primitive series have no unit term and no struts")
    }

    /// A random symmetric strut matrix over the element colors of the
    /// arities, with vanishing plus/plus block and sparse small entries.
    pub fn top_substantial_matrix(&mut self, g: usize, f: usize, fill: f64) -> StrutMatrix {
        let colors = element_colors(g, f);
        let mut m = StrutMatrix::zero(colors.clone());
        for (i, a) in colors.iter().enumerate() {
            for b in colors.iter().skip(i) {
                let both_plus = matches!(a, Color::Plus(_)) && matches!(b, Color::Plus(_));
                if both_plus || !self.rng.gen_bool(fill) {
                    continue;
                }
                m.set_sym(a, b, self.rational(2));
            }
        }
        m
    }

    /// A random group-like split element of the given arities.
    pub fn group_like_element(
        &mut self,
        g: usize,
        f: usize,
        max_ideg: usize,
        terms: usize,
        max_legs: usize,
    ) -> TsElement {
        let palette = element_colors(g, f);
        let y = if palette.is_empty() {
            YSeries::one(max_ideg)
        } else {
            self.group_like(max_ideg, &palette, terms, max_legs)
        };
        let w = self.top_substantial_matrix(g, f, 0.4);
        TsElement::new(g, f, w, y).expect("sampled elements are well-formed")
    }

    /// A random group-like cylinder value of the given genus.
    pub fn cylinder(&mut self, genus: usize, max_ideg: usize, terms: usize) -> CylinderValue {
        let palette = element_colors(genus, genus);
        let y = self.group_like(max_ideg, &palette, terms, 4);
        CylinderValue::new(genus, y).expect("sampled cylinders are well-formed")
    }
}
