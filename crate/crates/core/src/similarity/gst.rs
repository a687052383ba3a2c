//! Greedy string tiling over token sequences.
//!
//! Each pass finds the longest run of equal tokens that is still unmarked in
//! both sequences, then marks every non-overlapping run of that length in
//! order of (position in the first sequence, position in the second). Passes
//! repeat until the longest run is shorter than the minimum match length.
//! The pair is ordered canonically before tiling so that the result is
//! symmetric in its arguments.

use alloc::vec;
use alloc::vec::Vec;

/// JPlag's default minimum match length for Java token streams.
pub const DEFAULT_MIN_MATCH_LEN: usize = 9;

/// A tile: `len` tokens starting at `a_start` in the first sequence and
/// `b_start` in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tile {
    pub a_start: usize,
    pub b_start: usize,
    pub len: usize,
}

/// Tiles covering `a` with runs from `b`. A `min_match_len` of 0 is treated as 1.
pub fn greedy_string_tiling<T: Ord>(a: &[T], b: &[T], min_match_len: usize) -> Vec<Tile> {
    let swapped = b < a;
    let (p, t) = if swapped { (b, a) } else { (a, b) };
    let mut tiles = tile_ordered(p, t, min_match_len.max(1));
    if swapped {
        for tile in &mut tiles {
            core::mem::swap(&mut tile.a_start, &mut tile.b_start);
        }
    }
    tiles
}

fn tile_ordered<T: Eq>(p: &[T], t: &[T], min_len: usize) -> Vec<Tile> {
    let mut marked_p = vec![false; p.len()];
    let mut marked_t = vec![false; t.len()];
    let mut tiles = Vec::new();
    let mut prev = vec![0usize; t.len() + 1];
    let mut cur = vec![0usize; t.len() + 1];
    loop {
        // Longest common run of unmarked tokens, via run lengths ending at (i, j).
        let mut longest = 0;
        prev.iter_mut().for_each(|v| *v = 0);
        for i in 1..=p.len() {
            cur[0] = 0;
            for j in 1..=t.len() {
                cur[j] = if !marked_p[i - 1] && !marked_t[j - 1] && p[i - 1] == t[j - 1] { prev[j - 1] + 1 } else { 0 };
                longest = longest.max(cur[j]);
            }
            core::mem::swap(&mut prev, &mut cur);
        }
        if longest < min_len {
            return tiles;
        }

        let mut candidates = Vec::new();
        prev.iter_mut().for_each(|v| *v = 0);
        for i in 1..=p.len() {
            cur[0] = 0;
            for j in 1..=t.len() {
                cur[j] = if !marked_p[i - 1] && !marked_t[j - 1] && p[i - 1] == t[j - 1] { prev[j - 1] + 1 } else { 0 };
                if cur[j] == longest {
                    candidates.push((i - longest, j - longest));
                }
            }
            core::mem::swap(&mut prev, &mut cur);
        }

        for (ps, ts) in candidates {
            let free = marked_p[ps..ps + longest].iter().all(|m| !m) && marked_t[ts..ts + longest].iter().all(|m| !m);
            if free {
                marked_p[ps..ps + longest].iter_mut().for_each(|m| *m = true);
                marked_t[ts..ts + longest].iter_mut().for_each(|m| *m = true);
                tiles.push(Tile { a_start: ps, b_start: ts, len: longest });
            }
        }
    }
}

/// `2 · covered / (|a| + |b|)`: 1 when both sequences are empty, 0 when only one is.
pub fn gst_similarity<T: Ord>(a: &[T], b: &[T], min_match_len: usize) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let covered: usize = greedy_string_tiling(a, b, min_match_len).iter().map(|t| t.len).sum();
    (2 * covered) as f64 / (a.len() + b.len()) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn identical_streams() {
        let a = chars("ABCDEFGHIJ");
        assert_eq!(gst_similarity(&a, &a, 9), 1.0);
    }

    #[test]
    fn disjoint_streams() {
        assert_eq!(gst_similarity(&chars("ABCDEFGHIJ"), &chars("KLMNOPQRST"), 1), 0.0);
    }

    #[test]
    fn shared_prefix_of_ten() {
        let s = gst_similarity(&chars("ABCDEFGHIJX"), &chars("ABCDEFGHIJY"), 9);
        assert_eq!(s, 20.0 / 22.0);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(gst_similarity::<char>(&[], &[], 9), 1.0);
        assert_eq!(gst_similarity(&chars("AB"), &[], 1), 0.0);
    }

    #[test]
    fn greedy_longest_tile_blocks_shorter_ones() {
        // The longest run BCD occludes AB and DE, which together would cover more.
        let tiles = greedy_string_tiling(&chars("ABCDE"), &chars("BCDABDE"), 2);
        assert_eq!(tiles, vec![Tile { a_start: 1, b_start: 0, len: 3 }]);
    }

    #[test]
    fn tiles_report_original_orientation() {
        let a = chars("ZZABCD");
        let b = chars("ABCD");
        let tiles = greedy_string_tiling(&a, &b, 2);
        assert_eq!(tiles, vec![Tile { a_start: 2, b_start: 0, len: 4 }]);
    }

    #[test]
    fn below_minimum_is_ignored() {
        assert_eq!(gst_similarity(&chars("ABCX"), &chars("ABCY"), 4), 0.0);
        assert_eq!(gst_similarity(&chars("ABCX"), &chars("ABCY"), 3), 6.0 / 8.0);
        assert_eq!(gst_similarity(&chars("ABCX"), &chars("ABCY"), 0), gst_similarity(&chars("ABCX"), &chars("ABCY"), 1));
    }
}
