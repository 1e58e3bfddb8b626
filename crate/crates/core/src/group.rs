//! The root system Φ, the reflection group G of order 336, its subgroups
//! H (det = 1) and W (signed permutations), conjugacy classes and shortest
//! words in the basic reflections.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::arith::{rat, QuadElem};
use crate::error::{Error, Result};

/// 3×3 matrix over `½Z[α]`, stored as doubled coordinates:
/// entry `(i, j)` is `(n[i][j].0 + n[i][j].1·α) / 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat3 {
    n: [[(i64, i64); 3]; 3],
}

pub type Vec3 = [QuadElem; 3];

fn halve(v: i64) -> i64 {
    assert!(v % 2 == 0, "entry left ½Z[α]");
    v / 2
}

impl Mat3 {
    pub fn identity() -> Self {
        let mut n = [[(0, 0); 3]; 3];
        for (i, row) in n.iter_mut().enumerate() {
            row[i] = (2, 0);
        }
        Mat3 { n }
    }

    /// Returns `None` if some entry lies outside `½Z[α]`.
    pub fn from_quads(m: &[[QuadElem; 3]; 3]) -> Option<Self> {
        let mut n = [[(0, 0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let d = m[i][j].scale(&rat(2, 1));
                if !d.is_integral() {
                    return None;
                }
                n[i][j] = (
                    crate::arith::rational_to_i64(&d.x)?,
                    crate::arith::rational_to_i64(&d.y)?,
                );
            }
        }
        Some(Mat3 { n })
    }

    pub fn entry(&self, i: usize, j: usize) -> QuadElem {
        let (x, y) = self.n[i][j];
        QuadElem::new(rat(x, 2), rat(y, 2))
    }

    pub fn to_quads(&self) -> [[QuadElem; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j)))
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        let mut n = [[(0, 0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                // Σ (a + bα)(c + dα)/4 with α² = α − 2
                let (mut x, mut y) = (0i64, 0i64);
                for l in 0..3 {
                    let (a, b) = self.n[i][l];
                    let (c, d) = o.n[l][j];
                    x += a * c - 2 * b * d;
                    y += a * d + b * c + b * d;
                }
                n[i][j] = (halve(x), halve(y));
            }
        }
        Mat3 { n }
    }

    pub fn neg(&self) -> Mat3 {
        let mut n = self.n;
        for row in n.iter_mut() {
            for e in row.iter_mut() {
                *e = (-e.0, -e.1);
            }
        }
        Mat3 { n }
    }

    pub fn pow(&self, e: u32) -> Mat3 {
        (0..e).fold(Mat3::identity(), |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> QuadElem {
        let m = self.to_quads();
        let t = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
        let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
        let neg = &(&t(0, 2, 1) + &t(1, 0, 2)) + &t(2, 1, 0);
        &pos - &neg
    }

    /// True when every entry is real, i.e. has no α component.
    pub fn is_real(&self) -> bool {
        self.n.iter().flatten().all(|&(_, y)| y == 0)
    }

    pub fn apply(&self, z: &Vec3) -> Vec3 {
        std::array::from_fn(|i| {
            (0..3).fold(QuadElem::zero(), |acc, j| &acc + &(&self.entry(i, j) * &z[j]))
        })
    }

    /// Smallest `n ≥ 1` with `self^n = I` (searched up to 336).
    pub fn order(&self) -> u32 {
        let id = Mat3::identity();
        let mut p = *self;
        for n in 1..=336 {
            if p == id {
                return n;
            }
            p = p.mul(self);
        }
        0
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            let row: Vec<String> = (0..3).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hermitian product `⟨a|b⟩ = Σ conj(a_i) b_i`.
pub fn hermitian(a: &Vec3, b: &Vec3) -> QuadElem {
    (0..3).fold(QuadElem::zero(), |acc, i| &acc + &(&a[i].conj() * &b[i]))
}

/// The 42 roots: sign changes and permutations of (2,0,0), (0,α,α), (1,1,ᾱ).
pub fn build_roots() -> Vec<Vec3> {
    let seeds = [
        [QuadElem::from_ints(2, 0), QuadElem::zero(), QuadElem::zero()],
        [QuadElem::zero(), QuadElem::alpha(), QuadElem::alpha()],
        [QuadElem::one(), QuadElem::one(), QuadElem::alpha_bar()],
    ];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in &seeds {
        for p in &perms {
            for signs in 0..8 {
                let v: Vec3 = std::array::from_fn(|i| {
                    let e = s[p[i]].clone();
                    if signs >> i & 1 == 1 {
                        -e
                    } else {
                        e
                    }
                });
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// The basic roots φ₁ = (0,α,−α), φ₂ = (0,0,2), φ₃ = (1,1,ᾱ).
pub fn basic_roots() -> [Vec3; 3] {
    [
        [QuadElem::zero(), QuadElem::alpha(), -QuadElem::alpha()],
        [QuadElem::zero(), QuadElem::zero(), QuadElem::from_ints(2, 0)],
        [QuadElem::one(), QuadElem::one(), QuadElem::alpha_bar()],
    ]
}

/// `z ↦ z − 2⟨φ|z⟩/⟨φ|φ⟩ φ`.
pub fn reflection(phi: &Vec3) -> Mat3 {
    let nn = hermitian(phi, phi);
    let f = QuadElem::from_ints(2, 0) * nn.inv().expect("nonzero root");
    let m: [[QuadElem; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = if i == j { QuadElem::one() } else { QuadElem::zero() };
            &delta - &(&f * &(&phi[i] * &phi[j].conj()))
        })
    });
    Mat3::from_quads(&m).expect("reflection entries in ½Z[α]")
}

/// `[r₁, r₂, r₃]`.
pub fn generators() -> [Mat3; 3] {
    let r = basic_roots();
    [reflection(&r[0]), reflection(&r[1]), reflection(&r[2])]
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Mat3,
    /// Shortest word in generator indices 1, 2, 3 (`r_j` with `j` as stored).
    pub word: Vec<u8>,
}

/// Label of one of the twelve conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: String,
    pub rep: usize,
    pub size: usize,
    pub order: u32,
    /// `true` for the `−g` half of a pair.
    pub negated: bool,
}

/// The group G with its multiplication table.
pub struct Group {
    pub elements: Vec<GroupElement>,
    index: HashMap<Mat3, usize>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    pub generators: [Mat3; 3],
}

impl Group {
    /// Breadth-first closure from the identity, right-multiplying by
    /// r₁, r₂, r₃ in that order.
    pub fn build() -> Self {
        let gens = generators();
        let mut elements = vec![GroupElement {
            matrix: Mat3::identity(),
            word: Vec::new(),
        }];
        let mut index = HashMap::new();
        index.insert(Mat3::identity(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (j, r) in gens.iter().enumerate() {
                let m = elements[i].matrix.mul(r);
                if index.contains_key(&m) {
                    continue;
                }
                let mut word = elements[i].word.clone();
                word.push(j as u8 + 1);
                index.insert(m, elements.len());
                queue.push_back(elements.len());
                elements.push(GroupElement { matrix: m, word });
            }
        }
        let n = elements.len();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let m = elements[a].matrix.mul(&elements[b].matrix);
                table[a * n + b] = index[&m] as u16;
            }
        }
        let mut inverse = vec![0u16; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("inverse") as u16;
        }
        Group {
            elements,
            index,
            table,
            inverse,
            generators: gens,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &Mat3) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.index[&self.elements[a].matrix.neg()]
    }

    pub fn matrix(&self, a: usize) -> &Mat3 {
        &self.elements[a].matrix
    }

    /// Shortest word for `g`; errors if `g ∉ G`.
    pub fn word_for(&self, g: &Mat3) -> Result<&[u8]> {
        self.index_of(g)
            .map(|i| self.elements[i].word.as_slice())
            .ok_or(Error::NotInGroup)
    }

    /// Evaluates a word in r₁, r₂, r₃.
    pub fn eval_word(&self, word: &[u8]) -> Mat3 {
        word.iter()
            .fold(Mat3::identity(), |acc, &j| acc.mul(&self.generators[j as usize - 1]))
    }

    pub fn is_in_w(&self, a: usize) -> bool {
        self.elements[a].matrix.is_real()
    }

    pub fn det(&self, a: usize) -> QuadElem {
        self.elements[a].matrix.det()
    }

    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut seen: HashSet<usize> = (0..self.order())
            .map(|h| self.mul(self.mul(h, a), self.inv(h)))
            .collect();
        seen.insert(a);
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// g₇ = ρ₁ρ₂ρ₃ = −r₁r₂r₃.
    pub fn g7(&self) -> usize {
        self.index[&self.eval_word(&[1, 2, 3]).neg()]
    }

    /// The six H-class representatives `g₁, g₂, g₃, g₄, g₇, g₇⁻¹` with
    /// `ρ_i = −r_i`.
    pub fn h_representatives(&self) -> [(&'static str, usize); 6] {
        let rho = |w: &[u8]| {
            let m = self.eval_word(w);
            if w.len() % 2 == 1 {
                m.neg()
            } else {
                m
            }
        };
        let g7 = self.index[&rho(&[1, 2, 3])];
        [
            ("g1", 0),
            ("g2", self.index[&rho(&[1])]),
            ("g3", self.index[&rho(&[1, 3, 1, 2])]),
            ("g4", self.index[&rho(&[1, 2])]),
            ("g7", g7),
            ("g7^-1", self.inv(g7)),
        ]
    }

    /// Twelve classes in the order g₁, −g₁, g₂, −g₂, …, g₇⁻¹, −g₇⁻¹.
    pub fn conjugacy_classes(&self) -> Vec<ClassInfo> {
        let mut out = Vec::new();
        for (label, rep) in self.h_representatives() {
            for negated in [false, true] {
                let r = if negated { self.neg(rep) } else { rep };
                out.push(ClassInfo {
                    label: if negated { format!("-{label}") } else { label.to_string() },
                    rep: r,
                    size: self.conjugacy_class(r).len(),
                    order: self.matrix(r).order(),
                    negated,
                });
            }
        }
        out
    }

    /// For each element, the position of its class in [`Group::conjugacy_classes`].
    pub fn class_map(&self, classes: &[ClassInfo]) -> Vec<Option<usize>> {
        let mut map = vec![None; self.order()];
        for (c, info) in classes.iter().enumerate() {
            for g in self.conjugacy_class(info.rep) {
                map[g] = Some(c);
            }
        }
        map
    }

    /// The relations r₁² = r₂² = r₃² = (r₁r₂)⁴ = (r₂r₃)⁴ = (r₃r₁)³ = (r₁r₂r₁r₃)³ = 1.
    pub fn verify_relations(&self) -> Vec<(String, bool)> {
        relation_words()
            .iter()
            .map(|(name, w)| (name.to_string(), self.eval_word(w) == Mat3::identity()))
            .collect()
    }

    /// Cross-check: G is the disjoint union of the cosets g₇ⁱW, i = 0..6.
    pub fn coset_check(&self) -> bool {
        let g7 = self.g7();
        let w: Vec<usize> = (0..self.order()).filter(|&a| self.is_in_w(a)).collect();
        let mut seen = HashSet::new();
        let mut p = 0usize;
        for _ in 0..7 {
            for &x in &w {
                seen.insert(self.mul(p, x));
            }
            p = self.mul(p, g7);
        }
        p == 0 && seen.len() == self.order()
    }

    /// Checks that every element maps Φ onto Φ.
    pub fn permutes_roots(&self, roots: &[Vec3]) -> bool {
        let set: HashSet<&Vec3> = roots.iter().collect();
        self.elements
            .iter()
            .all(|g| roots.iter().all(|r| set.contains(&g.matrix.apply(r))))
    }
}

/// The seven defining relations as words in 1, 2, 3.
pub fn relation_words() -> Vec<(&'static str, Vec<u8>)> {
    let rep = |w: &[u8], n: usize| w.repeat(n);
    vec![
        ("r1^2", rep(&[1], 2)),
        ("r2^2", rep(&[2], 2)),
        ("r3^2", rep(&[3], 2)),
        ("(r1r2)^4", rep(&[1, 2], 4)),
        ("(r2r3)^4", rep(&[2, 3], 4)),
        ("(r3r1)^3", rep(&[3, 1], 3)),
        ("(r1r2r1r3)^3", rep(&[1, 2, 1, 3], 3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64, y: i64) -> QuadElem {
        QuadElem::from_ints(x, y)
    }

    #[test]
    fn roots() {
        let r = build_roots();
        assert_eq!(r.len(), 42);
        assert!(r.contains(&basic_roots()[0]));
        let set: HashSet<_> = r.iter().cloned().collect();
        assert!(r.iter().all(|v| set.contains(&[-v[0].clone(), -v[1].clone(), -v[2].clone()])));
        assert!(r.iter().all(|v| hermitian(v, v) == q(4, 0)));
    }

    #[test]
    fn displayed_reflections() {
        let [r1, r2, r3] = generators();
        let z = QuadElem::zero();
        let o = QuadElem::one();
        let r1_want = [[o.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), o.clone()], [z.clone(), o.clone(), z.clone()]];
        assert_eq!(r1.to_quads(), r1_want);
        assert_eq!(r2.to_quads()[2][2], q(-1, 0));
        assert_eq!(r2.to_quads()[0][0], o);
        let h = |x: i64, y: i64| QuadElem::new(rat(x, 2), rat(y, 2));
        // ½(1, −1, −α; −1, 1, −α; −ᾱ, −ᾱ, 0)
        let r3_want = [
            [h(1, 0), h(-1, 0), h(0, -1)],
            [h(-1, 0), h(1, 0), h(0, -1)],
            [h(-1, 1), h(-1, 1), h(0, 0)],
        ];
        assert_eq!(r3.to_quads(), r3_want);
    }

    #[test]
    fn g7_matches_display() {
        let g = Group::build();
        let g7 = g.matrix(g.g7());
        let h = |x: i64, y: i64| QuadElem::new(rat(x, 2), rat(y, 2));
        // ½(−1, 1, α; −ᾱ, −ᾱ, 0; 1, −1, α)
        let want = [
            [h(-1, 0), h(1, 0), h(0, 1)],
            [h(-1, 1), h(-1, 1), h(0, 0)],
            [h(1, 0), h(-1, 0), h(0, 1)],
        ];
        assert_eq!(g7.to_quads(), want);
        assert_eq!(g7.order(), 7);
        assert_eq!(g.eval_word(g.word_for(g7).unwrap()), *g7);
    }

    #[test]
    fn group_orders() {
        let g = Group::build();
        assert_eq!(g.order(), 336);
        assert!(g.index_of(&Mat3::identity().neg()).is_some());
        let h = (0..336).filter(|&a| g.det(a) == QuadElem::one()).count();
        assert_eq!(h, 168);
        assert!((0..336).all(|a| g.det(a) == QuadElem::one() || g.det(a) == q(-1, 0)));
        assert_eq!((0..336).filter(|&a| g.is_in_w(a)).count(), 48);
        assert!(g.coset_check());
        assert!(g.permutes_roots(&build_roots()));
    }

    #[test]
    fn relations_hold() {
        let g = Group::build();
        assert!(g.verify_relations().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn words() {
        let g = Group::build();
        assert!(g.word_for(&Mat3::identity()).unwrap().is_empty());
        assert_eq!(g.word_for(&g.generators[1]).unwrap(), &[2]);
        for e in &g.elements {
            assert_eq!(g.eval_word(&e.word), e.matrix);
        }
    }

    #[test]
    fn classes() {
        let g = Group::build();
        let cl = g.conjugacy_classes();
        let sizes: Vec<usize> = cl.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 1, 21, 21, 56, 56, 42, 42, 24, 24, 24, 24]);
        assert_eq!(sizes.iter().sum::<usize>(), 336);
        assert_eq!(cl[4].order, 3);
        assert_eq!(cl[6].order, 4);
        let map = g.class_map(&cl);
        assert!(map.iter().all(|c| c.is_some()));
    }

    #[test]
    fn reflections_fix_hyperplane() {
        for phi in build_roots() {
            let r = reflection(&phi);
            assert_eq!(r.mul(&r), Mat3::identity());
            // r − I = −(2/4)·φφ*: rank one, so r(φ) = −φ and r fixes φ⊥
            let img = r.apply(&phi);
            assert_eq!(img, [-phi[0].clone(), -phi[1].clone(), -phi[2].clone()]);
        }
    }
}
