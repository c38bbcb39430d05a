//! Lattice embeddings of plumbing forms into the standard negative-definite
//! lattice: exhaustive enumeration up to signed coordinate permutations, and
//! the explicit blowup embeddings of `L`-strings together with their cyclic
//! conversion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{dot, i_of, wu_element, GramForm, Matrix};
use crate::par;
use crate::strings::{dihedral_variants, l_history, IntString, Side};

pub const DEFAULT_MAX_RANK: usize = 10;

/// Columns of `b` are the images of the basis vectors; rows are coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    pub b: Matrix,
}

impl Embedding {
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        Self {
            b: (0..rows)
                .map(|i| cols.iter().map(|c| c[i]).collect())
                .collect(),
        }
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        let cols = self.b.first().map_or(0, Vec::len);
        (0..cols)
            .map(|j| self.b.iter().map(|r| r[j]).collect())
            .collect()
    }

    pub fn gram(&self) -> Matrix {
        let cols = self.columns();
        cols.iter()
            .map(|v| cols.iter().map(|w| dot(v, w)).collect())
            .collect()
    }

    pub fn wu(&self) -> Vec<i64> {
        wu_element(&self.columns())
    }

    /// Absolute Wu coordinates, largest first.
    pub fn wu_profile(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.wu().iter().map(|x| x.abs()).collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    }

    pub fn i_value(&self) -> i64 {
        let string: Vec<i64> = self.columns().iter().map(|v| -dot(v, v)).collect();
        i_of(&string)
    }
}

impl Serialize for Embedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Embedding", 3)?;
        st.serialize_field("matrix", &self.b)?;
        st.serialize_field("wu", &self.wu())?;
        st.serialize_field("i", &self.i_value())?;
        st.end()
    }
}

/// Lexicographically least representative under signed row permutations:
/// every row turned so its first nonzero entry is negative, rows sorted.
pub fn canonical_form(e: &Embedding) -> Embedding {
    let mut rows: Matrix =
        e.b.iter()
            .map(|r| match r.iter().find(|x| **x != 0) {
                Some(x) if *x > 0 => r.iter().map(|y| -y).collect(),
                _ => r.clone(),
            })
            .collect();
    rows.sort();
    Embedding { b: rows }
}

pub fn enumerate_embeddings(q: &GramForm) -> Result<Vec<Embedding>> {
    enumerate_embeddings_bounded(q, DEFAULT_MAX_RANK)
}

struct Search<'a> {
    q: &'a Matrix,
    n: usize,
    /// columns in processing order
    order: Vec<usize>,
}

/// Partial assignment: one column per processed basis vector.
#[derive(Clone)]
struct Partial {
    cols: Vec<Vec<i64>>,
}

impl Search<'_> {
    /// Block id per row: rows with equal prefix share an id; rows with an
    /// all-zero prefix are flagged.
    fn blocks(&self, p: &Partial) -> (Vec<usize>, Vec<bool>) {
        let n = self.n;
        let mut ids = vec![0usize; n];
        let mut zero = vec![true; n];
        for i in 0..n {
            zero[i] = p.cols.iter().all(|c| c[i] == 0);
            ids[i] = (0..i)
                .find(|&k| p.cols.iter().all(|c| c[k] == c[i]))
                .map_or(i, |k| ids[k]);
        }
        (ids, zero)
    }

    /// All admissible next columns for the partial assignment.
    fn candidates(&self, p: &Partial) -> Vec<Vec<i64>> {
        let depth = p.cols.len();
        let target = self.order[depth];
        let norm = -self.q[target][target];
        // required plain products sum_i v_j[i] x_i = -Q_jc
        let want: Vec<i64> = self.order[..depth]
            .iter()
            .map(|&j| -self.q[j][target])
            .collect();
        let (ids, zero) = self.blocks(p);
        // suffix norms of the placed columns for Cauchy-Schwarz pruning
        let suffix: Vec<Vec<i64>> = p
            .cols
            .iter()
            .map(|c| {
                let mut s = vec![0i64; self.n + 1];
                for i in (0..self.n).rev() {
                    s[i] = s[i + 1] + c[i] * c[i];
                }
                s
            })
            .collect();
        let mut out = Vec::new();
        let mut x = vec![0i64; self.n];
        let mut sums = vec![0i64; depth];
        self.fill(
            0, norm, &mut x, &mut sums, &want, &suffix, &ids, &zero, p, &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        row: usize,
        left: i64,
        x: &mut Vec<i64>,
        sums: &mut Vec<i64>,
        want: &[i64],
        suffix: &[Vec<i64>],
        ids: &[usize],
        zero: &[bool],
        p: &Partial,
        out: &mut Vec<Vec<i64>>,
    ) {
        // feasibility of every product constraint on the remaining rows
        for (j, s) in sums.iter().enumerate() {
            let need = want[j] - s;
            if need * need > suffix[j][row] * left {
                return;
            }
        }
        if row == self.n {
            if left == 0 {
                out.push(x.clone());
            }
            return;
        }
        let bound = (left as f64).sqrt() as i64 + 1;
        let mut lo = -bound;
        let mut hi = bound;
        if zero[row] {
            hi = 0;
        }
        if row > 0 && ids[row - 1] == ids[row] {
            lo = lo.max(x[row - 1]);
        }
        for v in lo..=hi {
            let sq = v * v;
            if sq > left {
                continue;
            }
            x[row] = v;
            for (j, c) in p.cols.iter().enumerate() {
                sums[j] += c[row] * v;
            }
            self.fill(row + 1, left - sq, x, sums, want, suffix, ids, zero, p, out);
            for (j, c) in p.cols.iter().enumerate() {
                sums[j] -= c[row] * v;
            }
        }
        x[row] = 0;
    }

    fn extend_all(&self, p: Partial, out: &mut Vec<Partial>) {
        if p.cols.len() == self.n {
            out.push(p);
            return;
        }
        for c in self.candidates(&p) {
            let mut next = p.clone();
            next.cols.push(c);
            self.extend_all(next, out);
        }
    }

    fn finish(&self, p: &Partial) -> Embedding {
        let mut cols = vec![Vec::new(); self.n];
        for (k, &j) in self.order.iter().enumerate() {
            cols[j] = p.cols[k].clone();
        }
        canonical_form(&Embedding::from_columns(&cols))
    }
}

/// All embeddings of `q` into the standard lattice of the same rank, one per
/// orbit of signed coordinate permutations, sorted.
pub fn enumerate_embeddings_bounded(q: &GramForm, max_rank: usize) -> Result<Vec<Embedding>> {
    let n = q.n();
    if n > max_rank {
        return Err(Error::TooLarge {
            got: n,
            max: max_rank,
        });
    }
    if !q.is_negative_definite() {
        return Err(Error::Invalid("form is not negative definite".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (q.q[i][i], i));
    let search = Search { q: &q.q, n, order };

    // frontier of depth two, expanded in parallel
    let mut frontier = vec![Partial { cols: Vec::new() }];
    for _ in 0..n.min(2) {
        frontier = frontier
            .into_iter()
            .flat_map(|p| {
                search.candidates(&p).into_iter().map(move |c| {
                    let mut next = p.clone();
                    next.cols.push(c);
                    next
                })
            })
            .collect();
    }
    let found: Vec<Embedding> = par::flat_map_collect(&frontier, |p| {
        let mut done = Vec::new();
        search.extend_all(p.clone(), &mut done);
        done.iter().map(|d| search.finish(d)).collect()
    });
    let mut found = found;
    found.sort();
    found.dedup();
    Ok(found)
}

/// A linear chain in the standard lattice built by tracked blowups, with
/// the coordinate of the current exceptional sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrackedChain {
    pub string: IntString,
    pub vectors: Vec<Vec<i64>>,
    pub exceptional: usize,
}

impl TrackedChain {
    pub fn total_class(&self) -> Vec<i64> {
        wu_element(&self.vectors)
    }

    pub fn gram(&self) -> Matrix {
        self.vectors
            .iter()
            .map(|v| self.vectors.iter().map(|w| dot(v, w)).collect())
            .collect()
    }
}

/// Seed `(4)`: the class `-2e_1` beside the exceptional class `e_1`; each
/// expansion move blows up a point where the exceptional sphere meets an end
/// of the chain.
pub fn build_l_chain(d: &[i64]) -> Result<TrackedChain> {
    let moves = l_history(d).ok_or_else(|| Error::NotInL(crate::strings::format_string(d)))?;
    let mut chain = TrackedChain {
        string: vec![4],
        vectors: vec![vec![-2]],
        exceptional: 0,
    };
    for side in moves {
        chain = blow_up(&chain, side);
    }
    Ok(chain)
}

fn blow_up(c: &TrackedChain, side: Side) -> TrackedChain {
    let m = c.vectors.len() + 1;
    let fresh = m - 1;
    let mut vectors: Vec<Vec<i64>> = c
        .vectors
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(0);
            w
        })
        .collect();
    // proper transform of the old exceptional sphere
    let mut old = vec![0i64; m];
    old[c.exceptional] = 1;
    old[fresh] = -1;
    let mut string = c.string.clone();
    match side {
        Side::Front => {
            // blow up where the exceptional sphere meets the last vector
            vectors.last_mut().unwrap()[fresh] -= 1;
            *string.last_mut().unwrap() += 1;
            vectors.insert(0, old);
            string.insert(0, 2);
        }
        Side::Back => {
            vectors[0][fresh] -= 1;
            string[0] += 1;
            vectors.push(old);
            string.push(2);
        }
    }
    TrackedChain {
        string,
        vectors,
        exceptional: fresh,
    }
}

/// The `L`-string `(d1 - 2, d2, ..., dm, 2)` behind a dihedral variant of
/// `d`, with that variant; `None` when no variant yields an `L`-string.
pub fn l_partner(d: &[i64]) -> Option<(IntString, IntString)> {
    dihedral_variants(d).into_iter().find_map(|v| {
        if v[0] < 4 {
            return None;
        }
        let mut c = v.clone();
        c[0] -= 2;
        c.push(2);
        crate::strings::in_l(&c).then_some((v, c))
    })
}

/// Handleslide the end `-2` handle over the first one, blow down the
/// exceptional sphere and forget the first handle. The result is a negative
/// cyclic embedding of the string `(b1 + 2, ...)`.
pub fn chain_to_cyclic(c: &TrackedChain) -> Result<Embedding> {
    let m = c.vectors.len();
    if m < 3 {
        return Err(Error::Invalid(
            "chain too short for the cyclic conversion".into(),
        ));
    }
    let (vectors, string) = if c.string[m - 1] == 2 {
        (c.vectors.clone(), c.string.clone())
    } else if c.string[0] == 2 {
        (
            c.vectors.iter().rev().cloned().collect(),
            c.string.iter().rev().copied().collect(),
        )
    } else {
        return Err(Error::NoEndTwo);
    };
    let e = c.exceptional;
    let slid: Vec<i64> = vectors[0]
        .iter()
        .zip(&vectors[m - 1])
        .map(|(a, b)| a - b)
        .collect();
    if slid[e] != 0 || vectors[1..m - 1].iter().any(|v| v[e] != 0) {
        return Err(Error::Invalid(
            "exceptional sphere still linked after the slide".into(),
        ));
    }
    let drop = |v: &Vec<i64>| -> Vec<i64> {
        v.iter()
            .enumerate()
            .filter(|(i, _)| *i != e)
            .map(|(_, x)| *x)
            .collect()
    };
    let mut cols = vec![drop(&slid)];
    cols.extend(vectors[1..m - 1].iter().map(drop));
    let emb = Embedding::from_columns(&cols);

    let mut d: IntString = string[..m - 1].to_vec();
    d[0] += 2;
    let want = crate::lattice::gram_form(1, &d)?;
    if emb.gram() != want.q {
        return Err(Error::Invalid(
            "converted subset does not realise the cyclic form".into(),
        ));
    }
    Ok(emb)
}

/// Reorder and re-sign the columns of a cyclic embedding realised on a
/// dihedral variant so that they follow `target` with the standard pattern:
/// consecutive products `+1`, closing product `-1` (0 for two vectors).
pub fn align_cyclic(cols: &[Vec<i64>], variant: &[i64], target: &[i64]) -> Option<Vec<Vec<i64>>> {
    let n = target.len();
    // find the symmetry taking target positions to variant positions
    let maps: Vec<Vec<usize>> = (0..n)
        .flat_map(|r| {
            [
                (0..n).map(|i| (i + r) % n).collect::<Vec<_>>(),
                (0..n).map(|i| (r + n - i) % n).collect::<Vec<_>>(),
            ]
        })
        .collect();
    let map = maps
        .into_iter()
        .find(|m| (0..n).all(|i| variant[m[i]] == target[i]))?;
    let mut out: Vec<Vec<i64>> = map.iter().map(|&k| cols[k].clone()).collect();
    if n >= 3 {
        for i in 1..n {
            if dot(&out[i - 1], &out[i]) < 0 {
                out[i] = out[i].iter().map(|x| -x).collect();
            }
        }
    }
    Some(out)
}
