//! Subsets of `[n] = {1, …, n}` as bitmasks (bit `i-1` stands for `i`) and
//! the shuffle sign `ε_{A,B}`.

pub type Subset = u32;

pub const MAX_VARIABLES: usize = 20;

pub fn full(n: usize) -> Subset {
    debug_assert!(n <= MAX_VARIABLES);
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|i| s & (1 << i) != 0).map(|i| i + 1).collect()
}

pub fn singleton(i: usize) -> Subset {
    1 << (i - 1)
}

/// Nonempty subsets of `[n]`, ordered by size and then lexicographically on
/// their ascending element lists.
pub fn nonempty_subsets(n: usize) -> Vec<Subset> {
    let mut all: Vec<Subset> = (1..=full(n)).collect();
    all.sort_by_key(|&s| (size(s), elements(s)));
    all
}

/// Ordered splittings `S = A ⊔ B` with `A` and `B` nonempty, in the order of
/// [`nonempty_subsets`] on `A`.
pub fn proper_splits(s: Subset) -> Vec<(Subset, Subset)> {
    let mut out = Vec::new();
    if s == 0 {
        return out;
    }
    let mut a = (s - 1) & s;
    while a != 0 {
        out.push((a, s ^ a));
        a = (a - 1) & s;
    }
    out.sort_by_key(|&(a, _)| (size(a), elements(a)));
    out
}

/// All splittings `S = A ⊔ B`, including empty parts.
pub fn all_splits(s: Subset) -> Vec<(Subset, Subset)> {
    let mut out = vec![(0, s)];
    out.extend(proper_splits(s));
    if s != 0 {
        out.push((s, 0));
    }
    out
}

/// `ε_{A,B} = ±1`: the sign of the permutation sorting the word "A ascending,
/// then B ascending" into ascending order, i.e. the parity of the pairs
/// `(a, b) ∈ A × B` with `a > b`.
pub fn shuffle_sign(a: Subset, b: Subset) -> i64 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    for i in elements(a) {
        let below = b & ((1u32 << (i - 1)) - 1);
        inversions += below.count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Compact label: digits concatenated when `n <= 9`, comma separated
/// otherwise.
pub fn label(s: Subset, n: usize) -> String {
    let els = elements(s);
    if n <= 9 {
        els.iter().map(|i| i.to_string()).collect()
    } else {
        els.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sign of the permutation taking `word` to sorted order, by counting
    /// inversions over the whole word.
    fn permutation_sign(word: &[usize]) -> i64 {
        let mut inv = 0;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if word[i] > word[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn matches_word_permutation_sign() {
        for n in 1..=6 {
            for s in 1..=full(n) {
                for (a, b) in all_splits(s) {
                    let mut w = elements(a);
                    w.extend(elements(b));
                    assert_eq!(shuffle_sign(a, b), permutation_sign(&w));
                }
            }
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(shuffle_sign(0b10, 0b01), -1);
        assert_eq!(shuffle_sign(0b01, 0b10), 1);
        // ε_{{2},{1,3}} = -1
        assert_eq!(shuffle_sign(0b010, 0b101), -1);
    }

    #[test]
    fn enumeration_order() {
        let s = nonempty_subsets(3);
        let labels: Vec<String> = s.iter().map(|&x| label(x, 3)).collect();
        assert_eq!(labels, ["1", "2", "3", "12", "13", "23", "123"]);
        assert_eq!(proper_splits(0b111).len(), 6);
        assert_eq!(all_splits(0b11).len(), 4);
        assert_eq!(label(0b11, 12), "1,2");
    }
}
