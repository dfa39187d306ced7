//! Link determinants from the Goeritz matrix of a checkerboard coloring,
//! cross-checked against the Jones polynomial at `q = i`.
//!
//! Faces are traced from the slot order alone: leaving crossing `c`
//! through slot `i`, follow the edge to its other end `(c', i')` and leave
//! `c'` through slot `i' + 1 (mod 4)`. Each step passes the corner between
//! slots `i'` and `i' + 1` of `c'`; corner `j` of a crossing is the one
//! between slots `j` and `j + 1`.

use crate::diagram::{PlanarDiagram, UnionFind};
use crate::error::{Error, Result};
use crate::khovanov::{build_reduced_complex, graded_euler_characteristic};

/// Faces of a connected diagram, two-colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckerboardColoring {
    /// Corners `(crossing, j)` of every face.
    pub faces: Vec<Vec<(usize, usize)>>,
    /// Color (0 or 1) of every face.
    pub color: Vec<u8>,
    /// Face of every corner, indexed `[crossing][j]`.
    pub corner_face: Vec<[usize; 4]>,
}

pub fn checkerboard(d: &PlanarDiagram) -> Result<CheckerboardColoring> {
    let m = d.crossing_count();
    if m == 0 {
        return Err(Error::Disconnected("a diagram without crossings has no checkerboard faces".into()));
    }
    check_connected(d)?;
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.num_edges()];
    for (c, x) in d.crossings().iter().enumerate() {
        for (s, &e) in x.slots.iter().enumerate() {
            ends[e].push((c, s));
        }
    }
    let other = |c: usize, s: usize| -> (usize, usize) {
        let e = d.crossings()[c].slots[s];
        if ends[e][0] == (c, s) {
            ends[e][1]
        } else {
            ends[e][0]
        }
    };
    let mut corner_face = vec![[usize::MAX; 4]; m];
    let mut faces = Vec::new();
    for c0 in 0..m {
        for s0 in 0..4 {
            // Dart leaving (c0, s0) enters the face whose corner precedes it.
            let start_corner = (c0, (s0 + 3) % 4);
            if corner_face[start_corner.0][start_corner.1] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let (mut c, mut s) = (c0, s0);
            loop {
                let (c2, s2) = other(c, s);
                if corner_face[c2][s2] != usize::MAX {
                    break;
                }
                corner_face[c2][s2] = id;
                corners.push((c2, s2));
                c = c2;
                s = (s2 + 1) % 4;
            }
            faces.push(corners);
        }
    }
    if faces.len() != m + 2 {
        return Err(Error::InvalidDiagram(format!(
            "{} faces for {m} crossings; the slot order does not describe a planar diagram",
            faces.len()
        )));
    }
    // Corners j and j + 1 of a crossing lie on opposite sides of an edge.
    let mut color = vec![u8::MAX; faces.len()];
    color[corner_face[0][0]] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for cf in &corner_face {
            for j in 0..4 {
                let (a, b) = (cf[j], cf[(j + 1) % 4]);
                for (x, y) in [(a, b), (b, a)] {
                    if color[x] != u8::MAX && color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        changed = true;
                    } else if color[x] != u8::MAX && color[x] == color[y] {
                        return Err(Error::InvalidDiagram("faces cannot be two-colored".into()));
                    }
                }
            }
        }
    }
    Ok(CheckerboardColoring { faces, color, corner_face })
}

fn check_connected(d: &PlanarDiagram) -> Result<()> {
    if d.free_loops().next().is_some() && d.crossing_count() > 0 || d.free_loops().count() > 1 {
        return Err(Error::Disconnected("diagram has a separate crossingless component".into()));
    }
    let mut uf = UnionFind::new(d.num_edges());
    for c in d.crossings() {
        for s in 1..4 {
            uf.union(c.slots[0], c.slots[s]);
        }
    }
    if uf.count() > 1 {
        return Err(Error::Disconnected(format!("diagram has {} separate pieces", uf.count())));
    }
    Ok(())
}

/// Integer symmetric matrix indexed by the faces of one color, one deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzMatrix {
    pub entries: Vec<Vec<i64>>,
    /// Original face index of every row.
    pub faces: Vec<usize>,
    pub white: u8,
    pub deleted: usize,
}

impl GoeritzMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Exact determinant by fraction-free elimination; 1 for the empty
    /// matrix.
    pub fn det(&self) -> i128 {
        bareiss(self.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect())
    }
}

fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

/// Goeritz matrix with faces of color 0 white and the first white face
/// deleted.
pub fn goeritz_matrix(d: &PlanarDiagram) -> Result<GoeritzMatrix> {
    if d.crossing_count() == 0 {
        check_connected(d)?;
        return Ok(GoeritzMatrix { entries: Vec::new(), faces: Vec::new(), white: 0, deleted: 0 });
    }
    goeritz_matrix_with(&checkerboard(d)?, 0, 0)
}

/// Goeritz matrix for a chosen white color, deleting the `deleted`-th white
/// face.
///
/// A crossing whose white corners are the same face contributes nothing.
/// Otherwise it contributes `η = +1` when its 0-resolution joins the two
/// white corners (white corners 1 and 3) and `η = -1` otherwise; the
/// off-diagonal entry is `-Σ η` and the diagonal makes rows sum to zero.
pub fn goeritz_matrix_with(col: &CheckerboardColoring, white: u8, deleted: usize) -> Result<GoeritzMatrix> {
    let whites: Vec<usize> = (0..col.faces.len()).filter(|&f| col.color[f] == white).collect();
    if deleted >= whites.len() {
        return Err(Error::InvalidDiagram(format!("no white face {deleted} to delete")));
    }
    let pos = |f: usize| whites.binary_search(&f).expect("white face");
    let n = whites.len();
    let mut full = vec![vec![0i64; n]; n];
    for cf in &col.corner_face {
        let eta = if col.color[cf[1]] == white { 1 } else { -1 };
        let (a, b) = if eta == 1 { (cf[1], cf[3]) } else { (cf[0], cf[2]) };
        if a == b {
            continue;
        }
        let (i, j) = (pos(a), pos(b));
        full[i][j] -= eta;
        full[j][i] -= eta;
    }
    for (i, row) in full.iter_mut().enumerate() {
        row[i] = 0;
        row[i] = -row.iter().sum::<i64>();
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != deleted).collect();
    let entries = keep.iter().map(|&i| keep.iter().map(|&j| full[i][j]).collect()).collect();
    Ok(GoeritzMatrix { entries, faces: keep.iter().map(|&i| whites[i]).collect(), white, deleted })
}

/// `|det G|`.
pub fn determinant(d: &PlanarDiagram) -> Result<u64> {
    let g = goeritz_matrix(d)?;
    u64::try_from(g.det().unsigned_abs()).map_err(|_| Error::Internal("determinant overflows u64".into()))
}

/// `|V(i)|`, the reduced Jones polynomial at a fourth root of unity.
pub fn jones_determinant_check(d: &PlanarDiagram) -> Result<u64> {
    let chi = graded_euler_characteristic(&build_reduced_complex(d));
    let (re, im) = chi
        .eval_at_i()
        .ok_or_else(|| Error::Internal("Euler characteristic has half-integer exponents".into()))?;
    if re != 0 && im != 0 {
        return Err(Error::Internal(format!("V(i) = {re} + {im}i is not an integer up to a unit")));
    }
    Ok(re.unsigned_abs() + im.unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_diagram, connected_sum, parse_braid, parse_pd_json};

    fn braid(s: &str) -> PlanarDiagram {
        braid_to_diagram(&parse_braid(s).unwrap())
    }

    fn all_dets(d: &PlanarDiagram) -> Vec<u128> {
        let col = checkerboard(d).unwrap();
        let mut out = Vec::new();
        for white in 0..2u8 {
            let count = col.color.iter().filter(|&&c| c == white).count();
            for del in 0..count {
                out.push(goeritz_matrix_with(&col, white, del).unwrap().det().unsigned_abs());
            }
        }
        out
    }

    #[test]
    fn unknot() {
        assert_eq!(determinant(&PlanarDiagram::unknot()).unwrap(), 1);
        assert_eq!(jones_determinant_check(&PlanarDiagram::unknot()).unwrap(), 1);
        assert_eq!(goeritz_matrix(&PlanarDiagram::unknot()).unwrap().size(), 0);
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let t = braid("s=2; w=1,1,1");
        assert!(all_dets(&t).iter().all(|&x| x == 3));
        assert_eq!(jones_determinant_check(&t).unwrap(), 3);
        let sizes: Vec<usize> =
            (0..2).map(|w| goeritz_matrix_with(&checkerboard(&t).unwrap(), w, 0).unwrap().size()).collect();
        assert!(sizes.contains(&2));
        let fig8 = parse_pd_json(r#"{"pd": [[4,2,5,1,"+"],[8,6,1,5,"+"],[6,3,7,4,"-"],[2,7,3,8,"-"]]}"#).unwrap();
        assert!(all_dets(&fig8).iter().all(|&x| x == 5));
        assert_eq!(jones_determinant_check(&fig8).unwrap(), 5);
    }

    #[test]
    fn torus_knots() {
        assert_eq!(determinant(&braid("s=3; w=1,2,1,2,1,2,1,2")).unwrap(), 3);
        assert_eq!(determinant(&braid("s=3; w=1,2,1,2,1,2,1,2,1,2")).unwrap(), 1);
    }

    #[test]
    fn multiplicative_under_connected_sum() {
        let t = braid("s=2; w=1,1,1");
        let f = braid("s=3; w=1,-2,1,-2");
        let sum = connected_sum(&t, &f);
        assert_eq!(determinant(&sum).unwrap(), determinant(&t).unwrap() * determinant(&f).unwrap());
    }

    #[test]
    fn disconnected_is_rejected() {
        assert!(matches!(determinant(&braid("s=2; w=")), Err(Error::Disconnected(_))));
        assert!(matches!(determinant(&braid("s=3; w=1,1")), Err(Error::Disconnected(_))));
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(bareiss(vec![vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(bareiss(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(bareiss(vec![]), 1);
    }
}
