//! Long-running d = 5 classification by levelwise canonical augmentation.
//!
//! The direct subset scan that works through d = 4 is hopeless at d = 5
//! (2^32 subsets), so classes are grown one vertex at a time: augment each
//! canonical representative of level k by every missing point,
//! canonicalize, and deduplicate. This is exact but slow; expect on the
//! order of an hour with several workers.

use std::collections::BTreeSet;

use cubex_core::enumerate::subset_dimension;
use cubex_core::polytope::CanonicalContext;

use crate::survey::parallel_map;

/// Byte-sliced group application: four 256-entry tables per group element
/// turn one canonicalization into a few lookups per element.
struct ByteLut {
    luts: Vec<[Box<[u64; 256]>; 4]>,
}

impl ByteLut {
    fn new(ctx: &CanonicalContext) -> Self {
        assert!(ctx.d() <= 5);
        let npoints = 1usize << ctx.d();
        let mut luts = Vec::with_capacity(ctx.group_size());
        for g in 0..ctx.group_size() {
            let table = ctx.table(g);
            let mut slices: [Box<[u64; 256]>; 4] = [
                Box::new([0; 256]),
                Box::new([0; 256]),
                Box::new([0; 256]),
                Box::new([0; 256]),
            ];
            for (byte_idx, slice) in slices.iter_mut().enumerate() {
                let base = byte_idx * 8;
                if base >= npoints {
                    break;
                }
                for val in 0..256usize {
                    let mut img = 0u64;
                    for bit in 0..8 {
                        let p = base + bit;
                        if p < npoints && val >> bit & 1 == 1 {
                            img |= 1u64 << table[p];
                        }
                    }
                    slice[val] = img;
                }
            }
            luts.push(slices);
        }
        ByteLut { luts }
    }

    /// Canonical mask: the image minimizing the reversed-bit encoding.
    fn canonical_mask(&self, mask: u64) -> u64 {
        let b0 = (mask & 0xff) as usize;
        let b1 = (mask >> 8 & 0xff) as usize;
        let b2 = (mask >> 16 & 0xff) as usize;
        let b3 = (mask >> 24 & 0xff) as usize;
        let mut best_key = u64::MAX;
        let mut best_img = 0u64;
        for slices in &self.luts {
            let img = slices[0][b0] | slices[1][b1] | slices[2][b2] | slices[3][b3];
            let key = img.reverse_bits();
            if key < best_key {
                best_key = key;
                best_img = img;
            }
        }
        best_img
    }
}

/// Counts the isometry classes of full-dimensional subsets of `{0,1}^5`.
/// `progress` receives `(level, classes at that level)` after each level.
pub fn classify_d5_count(workers: usize, mut progress: impl FnMut(usize, usize)) -> u64 {
    let d = 5usize;
    let ctx = CanonicalContext::new(d);
    let lut = ByteLut::new(&ctx);
    let npoints = 1u64 << d;

    let mut level: Vec<u64> = vec![0];
    let mut full_dim: u64 = 0;
    for size in 1..=npoints as usize {
        let chunk = level.len().div_ceil(workers.max(1)).max(1);
        let chunks: Vec<&[u64]> = level.chunks(chunk).collect();
        let sets = parallel_map(chunks.len(), workers, |ci| {
            let mut out = BTreeSet::new();
            for &mask in chunks[ci] {
                for p in 0..npoints {
                    if mask >> p & 1 == 0 {
                        out.insert(lut.canonical_mask(mask | 1 << p));
                    }
                }
            }
            out
        });
        let mut merged = BTreeSet::new();
        for s in sets {
            merged.extend(s);
        }
        level = merged.into_iter().collect();
        if size > d {
            full_dim += level
                .iter()
                .filter(|&&m| subset_dimension(d, m) == d)
                .count() as u64;
        }
        progress(size, level.len());
    }
    full_dim
}

/// Same algorithm at a smaller dimension, for validating the machinery
/// against the direct scan.
pub fn classify_bfs_count(d: usize, workers: usize) -> u64 {
    assert!(d <= 4);
    let ctx = CanonicalContext::new(d);
    let npoints = 1u64 << d;
    let mut level: Vec<u64> = vec![0];
    let mut full_dim = 0u64;
    for size in 1..=npoints as usize {
        let chunk = level.len().div_ceil(workers.max(1)).max(1);
        let chunks: Vec<&[u64]> = level.chunks(chunk).collect();
        let sets = parallel_map(chunks.len(), workers, |ci| {
            let mut out = BTreeSet::new();
            for &mask in chunks[ci] {
                for p in 0..npoints {
                    if mask >> p & 1 == 0 {
                        let sig = ctx.canonical_of_mask(mask | 1 << p);
                        out.insert(sig.0.reverse_bits());
                    }
                }
            }
            out
        });
        let mut merged = BTreeSet::new();
        for s in sets {
            merged.extend(s);
        }
        level = merged.into_iter().collect();
        if size > d {
            full_dim += level
                .iter()
                .filter(|&&m| subset_dimension(d, m) == d)
                .count() as u64;
        }
    }
    full_dim
}
