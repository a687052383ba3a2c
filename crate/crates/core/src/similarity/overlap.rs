use alloc::collections::BTreeSet;

/// `|X ∩ Y| / min(|X|, |Y|)`, defined as 0 when either set is empty.
pub fn overlap_coefficient<T: Ord>(x: &BTreeSet<T>, y: &BTreeSet<T>) -> f64 {
    let smaller = x.len().min(y.len());
    if smaller == 0 {
        return 0.0;
    }
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let shared = small.iter().filter(|v| large.contains(v)).count();
    shared as f64 / smaller as f64
}
