use std::fmt;

/// Largest supported dimension; colors must fit in a `u32` bit set.
pub const MAX_DIMENSION: usize = 31;

/// A subset of the color palette `{0, .., d}`, as a bit set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// All colors `0..=d`.
    pub fn full(d: usize) -> Self {
        debug_assert!(d <= MAX_DIMENSION);
        ColorSet(((1u64 << (d + 1)) - 1) as u32)
    }

    pub fn single(c: usize) -> Self {
        ColorSet(1 << c)
    }

    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Self {
        ColorSet(colors.into_iter().fold(0, |acc, c| acc | (1 << c)))
    }

    /// `Δ_d` minus the given colors (the "hat" notation).
    pub fn complement_of<I: IntoIterator<Item = usize>>(d: usize, colors: I) -> Self {
        ColorSet::full(d).minus(ColorSet::from_colors(colors))
    }

    pub fn complement(self, d: usize) -> Self {
        ColorSet::full(d).minus(self)
    }

    pub const fn contains(self, c: usize) -> bool {
        self.0 & (1 << c) != 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn with(self, c: usize) -> Self {
        ColorSet(self.0 | (1 << c))
    }

    pub const fn without(self, c: usize) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub const fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub const fn minus(self, other: ColorSet) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `{0..=d}` with exactly `size` colors, in ascending bit order.
    pub fn subsets_of_size(d: usize, size: usize) -> impl Iterator<Item = ColorSet> {
        let full = ColorSet::full(d).0;
        (0..=full).filter(move |b| b.count_ones() as usize == size).map(ColorSet)
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ColorSet::from_colors(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_and_iteration() {
        let b = ColorSet::complement_of(3, [1]);
        assert_eq!(b.to_vec(), vec![0, 2, 3]);
        assert_eq!(b.complement(3), ColorSet::single(1));
        assert_eq!(b.to_string(), "{0,2,3}");
        assert_eq!(ColorSet::EMPTY.iter().count(), 0);
    }

    #[test]
    fn subset_counts_are_binomial() {
        for (size, expected) in [0usize, 1, 2, 3, 4, 5].into_iter().zip([1usize, 5, 10, 10, 5, 1]) {
            assert_eq!(ColorSet::subsets_of_size(4, size).count(), expected);
        }
    }
}
