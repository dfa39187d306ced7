#![allow(dead_code)]

use khpages::diagram::{braid_to_diagram, BraidWord, PlanarDiagram};
use khpages::f2homalg::{Complex, Degree, FilteredComplex};
use khpages::poly::LaurentPoly;
use rand::Rng;

pub const T34: &str = "s=3; w=1,2,1,2,1,2,1,2";
pub const T35: &str = "s=3; w=1,2,1,2,1,2,1,2,1,2";
pub const T34_KH: &str = "h^0q^6 + h^2q^10 + h^3q^12 + h^4q^12 + h^5q^16";
pub const T35_KH: &str = "h^0q^8 + h^2q^12 + h^3q^14 + h^4q^14 + h^5q^18 + h^6q^18 + h^7q^20";
pub const FIGURE_EIGHT_PD: &str = r#"{"pd": [[4,2,5,1,"+"],[8,6,1,5,"+"],[6,3,7,4,"-"],[2,7,3,8,"-"]]}"#;

/// Random braid with `1..=max_strands` strands and at most `max_len` letters.
pub fn random_braid(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let s = rng.gen_range(1..=max_strands);
    let len = if s == 1 { 0 } else { rng.gen_range(0..=max_len) };
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..s as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(s, letters).unwrap()
}

/// Random braid whose closure diagram is connected (every generator used).
pub fn random_connected_braid(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> BraidWord {
    loop {
        let b = random_braid(rng, max_strands, max_len);
        let s = b.strands() as i32;
        if (1..s).all(|i| b.letters().iter().any(|l| l.abs() == i)) {
            return b;
        }
    }
}

pub fn random_positive_braid(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let b = random_braid(rng, max_strands, max_len);
    BraidWord::new(b.strands(), b.letters().iter().map(|l| l.abs()).collect()).unwrap()
}

/// Random filtered complex: a standard form of survivors and canceling
/// pairs, conjugated by a random graded, filtered, invertible change of
/// basis.
pub fn random_filtered_complex(rng: &mut impl Rng, max_dim: usize, span: i64) -> FilteredComplex {
    let n_target = rng.gen_range(1..=max_dim);
    let mut gens: Vec<(i64, i64, i64)> = Vec::new(); // (h, q, f)
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    while gens.len() < n_target {
        let h = rng.gen_range(0..4);
        let q = rng.gen_range(0..2);
        let f = rng.gen_range(0..=span);
        if gens.len() + 2 <= n_target && rng.gen_bool(0.6) {
            let f2 = rng.gen_range(f..=span);
            arrows.push((gens.len(), gens.len() + 1));
            gens.push((h, q, f));
            gens.push((h + 1, q, f2));
        } else {
            gens.push((h, q, f));
        }
    }
    let n = gens.len();
    let mut m: Vec<u32> = vec![0; n];
    for &(i, j) in &arrows {
        m[i] |= 1 << j;
    }
    // A = I + N with N supported on same-degree pairs (i, j), f(j) >= f(i),
    // and j after i in the (f, index) order: unipotent, hence invertible.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (gens[i].2, i));
    let mut pos = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let mut a: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for i in 0..n {
        for j in 0..n {
            let same = gens[i].0 == gens[j].0 && gens[i].1 == gens[j].1;
            if same && pos[j] > pos[i] && rng.gen_bool(0.4) {
                a[i] |= 1 << j;
            }
        }
    }
    let a_inv = invert(&a);
    let m2 = mul(&mul(&a, &m), &a_inv);
    let degrees = gens.iter().map(|&(h, q, _)| Degree::new(h, q)).collect();
    let mut list = Vec::new();
    for (i, row) in m2.iter().enumerate() {
        list.extend((0..n).filter(|&j| row >> j & 1 == 1).map(|j| (i, j)));
    }
    let complex = Complex::from_arrows(degrees, &list).expect("conjugate of a complex");
    FilteredComplex::new(complex, gens.iter().map(|g| g.2).collect()).expect("filtered basis change")
}

fn mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|&row| (0..b.len()).filter(|&k| row >> k & 1 == 1).fold(0, |acc, k| acc ^ b[k]))
        .collect()
}

fn invert(a: &[u32]) -> Vec<u32> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r] >> c & 1 == 1).expect("invertible");
        m.swap(c, p);
        inv.swap(c, p);
        for r in 0..n {
            if r != c && m[r] >> c & 1 == 1 {
                m[r] ^= m[c];
                inv[r] ^= inv[c];
            }
        }
    }
    inv
}

/// Eight generators in filtration levels 0, 1, 2 whose pages have totals
/// 4, 2, 0: canceling `s -> r` turns `p -> r` into the length-two arrow
/// `p -> t`.
pub fn three_level_complex() -> FilteredComplex {
    let h = [0, 1, 0, 1, 0, 1, 0, 1];
    let f = vec![0, 1, 1, 2, 0, 1, 0, 0];
    let arrows = [(0, 1), (2, 1), (2, 3), (4, 5), (6, 7)];
    let c = Complex::from_arrows(h.iter().map(|&h| Degree::new(h, 0)).collect(), &arrows).unwrap();
    FilteredComplex::new(c, f).unwrap()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
}

/// Reduced Jones polynomial by the Kauffman bracket state sum, normalized
/// to `q^2 + q^6 - q^8` on the right trefoil:
/// `(-1)^{n-} q^{n+ - 2n-} Σ_s (-q)^{|s|} (q + q^{-1})^{loops(s) - 1}`.
pub fn bracket_jones(d: &PlanarDiagram) -> LaurentPoly {
    let m = d.crossing_count();
    let e = d.num_edges();
    let q_plus_inv = LaurentPoly::from_terms([(1, 1), (1, -1)]);
    let mut total = LaurentPoly::zero();
    for state in 0u64..1 << m {
        let mut dsu = Dsu((0..e).collect());
        for (j, c) in d.crossings().iter().enumerate() {
            let s = c.slots;
            let pairs = if state >> j & 1 == 1 { [(s[0], s[3]), (s[1], s[2])] } else { [(s[0], s[1]), (s[2], s[3])] };
            for (x, y) in pairs {
                let (rx, ry) = (dsu.find(x), dsu.find(y));
                dsu.0[rx] = ry;
            }
        }
        let loops = (0..e).filter(|&x| dsu.find(x) == x).count();
        let w = state.count_ones() as i64;
        let mut term = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, w);
        for _ in 1..loops {
            term = &term * &q_plus_inv;
        }
        total = &total + &term;
    }
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    &total * &LaurentPoly::monomial(sign, np - 2 * nm)
}

/// Alternating braid closures that are knots: odd generators positive, even
/// generators negative, every generator used, one word per rotation class.
pub fn alternating_knot_braids(max_strands: usize, max_crossings: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for s in 2..=max_strands {
        let letters: Vec<i32> = (1..s as i32).map(|i| if i % 2 == 1 { i } else { -i }).collect();
        let k = letters.len();
        for len in 1..=max_crossings {
            let count = k.pow(len as u32);
            if count > 20_000 {
                break;
            }
            for mut code in 0..count {
                let mut w = Vec::with_capacity(len);
                for _ in 0..len {
                    w.push(letters[code % k]);
                    code /= k;
                }
                if !letters.iter().all(|l| w.contains(l)) {
                    continue;
                }
                let canonical = (0..len)
                    .map(|r| {
                        let mut v = w.clone();
                        v.rotate_left(r);
                        v
                    })
                    .min()
                    .unwrap();
                if !seen.insert((s, canonical)) {
                    continue;
                }
                let b = BraidWord::new(s, w).unwrap();
                if braid_to_diagram(&b).components() == 1 {
                    out.push(b);
                }
            }
        }
    }
    out
}
