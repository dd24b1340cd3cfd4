//! Maps between direct sums of slices `⊕_s V_{m}` → `⊕_t V_{m'}` whose
//! blocks are signed induced maps along coordinate injections.

use std::collections::HashMap;

use crate::error::Result;
use crate::fi::{enumerate_injections, evaluate_slice, FIPresentation, Injection};
use crate::linalg::{Column, Matrix, ModuleMap, RingSpec};

#[derive(Clone, Debug)]
pub(crate) struct BlockMap {
    pub src_degree: usize,
    pub tgt_degree: usize,
    pub src_count: usize,
    pub tgt_count: usize,
    /// Per source summand: `(target summand, sign, images of [src_degree] ↪ [tgt_degree])`.
    pub blocks: Vec<Vec<(usize, i64, Vec<usize>)>>,
}

/// 1-based positions of the entries of `sub` inside the increasing list `sup`.
pub(crate) fn positions(sub: &[usize], sup: &[usize]) -> Vec<usize> {
    sub.iter()
        .map(|x| sup.binary_search(x).expect("subset") + 1)
        .collect()
}

fn push(col: &mut Column, row: usize, sign: i64, ring: RingSpec) {
    col.push((row, ring.from_i64(sign)));
}

fn normalize(mut col: Column) -> Column {
    col.sort_by_key(|(r, _)| *r);
    let mut out: Column = Vec::with_capacity(col.len());
    for (r, x) in col {
        match out.last_mut() {
            Some((lr, lx)) if *lr == r => *lx = &*lx + &x,
            _ => out.push((r, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

impl BlockMap {
    pub fn ambient(&self, p: &FIPresentation) -> Matrix {
        let ring = p.ring();
        let src = evaluate_slice(p, self.src_degree);
        let tgt = evaluate_slice(p, self.tgt_degree);
        let (sa, ta) = (src.ambient_rank(), tgt.ambient_rank());
        let basis: Vec<(usize, Injection)> = p
            .degrees()
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| enumerate_injections(d, self.src_degree).into_iter().map(move |g| (i, g)))
            .collect();
        let mut cols = Vec::with_capacity(self.src_count * sa);
        for blocks in &self.blocks {
            for (i, g) in &basis {
                let mut col = Vec::with_capacity(blocks.len());
                for (t, sign, delta) in blocks {
                    let images: Vec<usize> = g.images().iter().map(|&x| delta[x - 1]).collect();
                    push(&mut col, t * ta + tgt.index(*i, &images), *sign, ring);
                }
                cols.push(normalize(col));
            }
        }
        Matrix::from_columns(ring, self.tgt_count * ta, cols).expect("valid block map")
    }

    /// The map in quotient coordinates of the slices.
    pub fn quotient(&self, p: &FIPresentation, cache: &mut QuotientCache) -> Result<Matrix> {
        let ring = p.ring();
        let qs = evaluate_slice(p, self.src_degree).module().quotient_rank()?;
        let qt = evaluate_slice(p, self.tgt_degree).module().quotient_rank()?;
        let mut cols = Vec::with_capacity(self.src_count * qs);
        for blocks in &self.blocks {
            let mats: Vec<(usize, i64, Matrix)> = blocks
                .iter()
                .map(|(t, s, delta)| Ok((*t, *s, cache.get(p, self.src_degree, self.tgt_degree, delta)?)))
                .collect::<Result<_>>()?;
            for k in 0..qs {
                let mut col = Vec::new();
                for (t, sign, m) in &mats {
                    for (r, x) in m.column(k).iter() {
                        col.push((t * qt + r, &x.clone() * &ring.from_i64(*sign)));
                    }
                }
                cols.push(normalize(col));
            }
        }
        Matrix::from_columns(ring, self.tgt_count * qt, cols)
    }
}

/// Quotient-coordinate matrices of `δ_*: V_m → V_{m'}`, memoized per call site.
#[derive(Default)]
pub(crate) struct QuotientCache {
    map: HashMap<(usize, usize, Vec<usize>), Matrix>,
}

impl QuotientCache {
    pub fn get(&mut self, p: &FIPresentation, m: usize, m2: usize, delta: &[usize]) -> Result<Matrix> {
        let key = (m, m2, delta.to_vec());
        if let Some(q) = self.map.get(&key) {
            return Ok(q.clone());
        }
        let f = Injection::new(delta.to_vec(), m2)?;
        let src = evaluate_slice(p, m);
        let tgt = evaluate_slice(p, m2);
        let mat = crate::fi::relabel_matrix(p.ring(), p.degrees(), &f, &src, &tgt);
        let q = ModuleMap::new(src.module().clone(), tgt.module().clone(), mat)?.quotient_matrix()?;
        self.map.insert(key, q.clone());
        Ok(q)
    }
}
