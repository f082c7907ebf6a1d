use std::fmt;

/// Generator family. `Wt` is the rescaled weight-3 generator, which keeps
/// every structure constant rational.
///
/// The derived order (`L` before `Wt`) is the canonical PBW order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    L,
    Wt,
}

impl Family {
    /// Conformal weight of the generating field.
    pub fn weight(self) -> i64 {
        match self {
            Family::L => 2,
            Family::Wt => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::Wt => "Wt",
        }
    }
}

/// A single mode `L_n` or `Wt_n`. Ordering is family first, then index
/// ascending, so sorted words have the most negative index leftmost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub family: Family,
    pub index: i64,
}

impl Mode {
    pub const fn l(index: i64) -> Self {
        Mode {
            family: Family::L,
            index,
        }
    }

    pub const fn wt(index: i64) -> Self {
        Mode {
            family: Family::Wt,
            index,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family.name(), self.index)
    }
}

/// A canonically ordered word of creation modes applied to the highest
/// weight vector. The empty word is the highest weight vector itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<Mode>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn level(&self) -> i64 {
        level_of_word(&self.0)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }
}

pub(crate) fn level_of_word(word: &[Mode]) -> i64 {
    -word.iter().map(|m| m.index).sum::<i64>()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.0 {
            write!(f, "{}", m)?;
        }
        f.write_str("vac")
    }
}

/// Partitions of `n` into parts `>= min_part`, each listed with parts in
/// descending order; the partitions themselves come in reverse
/// lexicographic order.
pub(crate) fn partitions(n: i64, min_part: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max_part: i64, min_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut p = n.min(max_part);
        while p >= min_part {
            prefix.push(p);
            go(n - p, p, min_part, prefix, out);
            prefix.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        go(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_l_first_and_most_negative_left() {
        let mut v = vec![Mode::wt(-3), Mode::l(-2), Mode::wt(-4), Mode::l(-3)];
        v.sort();
        assert_eq!(
            v,
            vec![Mode::l(-3), Mode::l(-2), Mode::wt(-4), Mode::wt(-3)]
        );
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(0, 1), vec![Vec::<i64>::new()]);
        assert_eq!(partitions(5, 1).len(), 7);
        assert_eq!(partitions(6, 2).len(), 4);
        assert_eq!(partitions(5, 3), vec![vec![5]]);
        assert!(partitions(1, 2).is_empty());
    }
}
