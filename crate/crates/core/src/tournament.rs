//! Tournaments: complete directed graphs with exactly one arc per pair.
//!
//! Players are indexed `0..n`. The adjacency is stored as a row-major bit
//! matrix, so `beats(i, j)` is a single bit probe and whole rows are
//! available as masks for the search code in [`crate::distance`] and
//! [`crate::canon`].

use crate::error::{Error, Result};

/// Hard cap on the player count; row masks must fit in a `u64`.
pub const MAX_PLAYERS: usize = 64;

/// A tournament on `n` players: for every pair `i != j` exactly one of
/// `i beats j` / `j beats i` holds. There are no ties and no self-games.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    /// Row-major bits, bit `i * n + j` set iff `i` beats `j`.
    bits: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={}, {:?})", self.n, self.to_text())
    }
}

impl Tournament {
    /// Builds a tournament from an orientation oracle. `wins(i, j)` is
    /// consulted once per unordered pair with `i < j` and returns whether
    /// `i` beats `j`; completeness and antisymmetry hold by construction.
    pub fn from_orientations(n: usize, mut wins: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_player_count(n)?;
        let mut t = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if wins(i, j) {
                    t.set_bit(i, j);
                } else {
                    t.set_bit(j, i);
                }
            }
        }
        Ok(t)
    }

    fn empty(n: usize) -> Self {
        let words = (n * n + 63) / 64;
        Tournament { n, bits: vec![0; words] }
    }

    fn set_bit(&mut self, i: usize, j: usize) {
        let k = i * self.n + j;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    /// Number of players.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether player `i` beat player `j`. Exactly one of `beats(i, j)`,
    /// `beats(j, i)` is true for `i != j`; `beats(i, i)` is always false.
    pub fn beats(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        let k = i * self.n + j;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Number of players beaten by `i`.
    pub fn outdegree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.beats(i, j)).count()
    }

    /// Number of players that beat `i`.
    pub fn indegree(&self, i: usize) -> usize {
        self.n - 1 - self.outdegree(i)
    }

    /// Outdegrees sorted in nonincreasing order. Invariant under relabeling,
    /// and the sum is always `n * (n - 1) / 2`.
    pub fn outdegree_profile(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = (0..self.n).map(|i| self.outdegree(i)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs
    }

    /// Wins of player `i` as a bitmask over player indices.
    pub fn row_mask(&self, i: usize) -> u64 {
        let mut m = 0u64;
        for j in 0..self.n {
            if self.beats(i, j) {
                m |= 1 << j;
            }
        }
        m
    }

    /// The tournament with players renamed: old index `p` becomes `perm[p]`.
    /// `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(Error::Parameter(format!(
                "relabel requires a permutation of 0..{}",
                self.n
            )));
        }
        let mut t = Self::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.beats(i, j) {
                    t.set_bit(perm[i], perm[j]);
                }
            }
        }
        Ok(t)
    }

    /// Serializes to the text format: a header line `n=<count>` followed by
    /// `n` rows of `n` characters over `{0, 1, -}`, `-` on the diagonal and
    /// `1` where the row player beats the column player. Every row ends with
    /// a newline; [`Tournament::from_text`] round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(8 + self.n * (self.n + 1));
        s.push_str(&format!("n={}\n", self.n));
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if i == j {
                    '-'
                } else if self.beats(i, j) {
                    '1'
                } else {
                    '0'
                });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text format produced by [`Tournament::to_text`]. The final
    /// newline may be absent; anything else malformed is an error.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected `n=<count>` header, got `{header}`")))?;
        check_player_count(n)?;
        let mut t = Self::empty(n);
        let mut seen = 0usize;
        for (i, line) in lines.by_ref().take(n).enumerate() {
            seen += 1;
            if line.len() != n {
                return Err(Error::Parse(format!(
                    "row {i} has {} characters, expected {n}",
                    line.len()
                )));
            }
            for (j, c) in line.chars().enumerate() {
                match (i == j, c) {
                    (true, '-') => {}
                    (false, '1') => t.set_bit(i, j),
                    (false, '0') => {}
                    _ => {
                        return Err(Error::Parse(format!(
                            "unexpected character `{c}` at row {i}, column {j}"
                        )))
                    }
                }
            }
        }
        if seen != n {
            return Err(Error::Parse(format!("expected {n} rows, found {seen}")));
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after adjacency rows".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if t.beats(i, j) == t.beats(j, i) {
                    return Err(Error::Parse(format!(
                        "pair ({i}, {j}) must have exactly one winner"
                    )));
                }
            }
        }
        Ok(t)
    }
}

fn check_player_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::PlayerCount {
            n,
            reason: format!("must be in 1..={MAX_PLAYERS}"),
        });
    }
    Ok(())
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
}

/// The transitive tournament: player `i` beats every `j > i`, so player 0
/// beats everyone and outdegrees are `n-1, n-2, ..., 0`.
pub fn ordered(n: usize) -> Result<Tournament> {
    Tournament::from_orientations(n, |_, _| true)
}

/// The rotational tournament: players sit on a cycle and each `v_i` beats
/// the next `floor(n/2)` players `v_{i+1}, ..., v_{i+floor(n/2)}` (indices
/// mod `n`), skipping any pair settled by an earlier player. For odd `n`
/// this is the regular tournament generalizing rock-paper-scissors; for
/// even `n` the opposite pair is settled by the lower-indexed player.
pub fn rps(n: usize) -> Result<Tournament> {
    if n < 3 {
        return Err(Error::PlayerCount {
            n,
            reason: "rotational tournament needs at least 3 players".into(),
        });
    }
    check_player_count(n)?;
    let half = n / 2;
    let mut settled = vec![false; n * n];
    let mut wins = vec![false; n * n];
    for i in 0..n {
        for d in 1..=half {
            let j = (i + d) % n;
            if !settled[i * n + j] {
                settled[i * n + j] = true;
                settled[j * n + i] = true;
                wins[i * n + j] = true;
            }
        }
    }
    Tournament::from_orientations(n, |i, j| wins[i * n + j])
}

/// `k` ordered players on top of a rotational block: players `0..k` play
/// `ordered(k)` among themselves, players `k..n` play `rps(n - k)`, and
/// every ordered-block player beats every rotational-block player.
pub fn ord_rps(n: usize, k: usize) -> Result<Tournament> {
    mixed(n, k, true)
}

/// A rotational block on top of `k` ordered players: same blocks as
/// [`ord_rps`], but every rotational-block player beats every ordered-block
/// player.
pub fn rps_ord(n: usize, k: usize) -> Result<Tournament> {
    mixed(n, k, false)
}

fn mixed(n: usize, k: usize, ordered_on_top: bool) -> Result<Tournament> {
    check_player_count(n)?;
    if k < 1 || k + 3 > n {
        return Err(Error::Parameter(format!(
            "ordered block size {k} must satisfy 1 <= k <= n - 3 (n = {n})"
        )));
    }
    let block = rps(n - k)?;
    Tournament::from_orientations(n, |i, j| {
        match (i < k, j < k) {
            (true, true) => true,                        // ordered block, i < j
            (false, false) => block.beats(i - k, j - k), // rotational block
            (true, false) => ordered_on_top,
            (false, true) => !ordered_on_top,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_profile_is_descending_run() {
        let t = ordered(5).unwrap();
        assert_eq!(t.outdegree_profile(), vec![4, 3, 2, 1, 0]);
        assert!(t.beats(0, 4) && t.beats(2, 3) && !t.beats(4, 0));
    }

    #[test]
    fn rps_three_is_the_three_cycle() {
        let t = rps(3).unwrap();
        assert!(t.beats(0, 1) && t.beats(1, 2) && t.beats(2, 0));
        assert_eq!(t.outdegree_profile(), vec![1, 1, 1]);
    }

    #[test]
    fn rps_seven_is_regular() {
        let t = rps(7).unwrap();
        assert_eq!(t.outdegree_profile(), vec![3; 7]);
    }

    #[test]
    fn rps_twelve_matches_hand_execution() {
        // Walking the rotation by hand for n = 12: each i claims the next
        // six seats, but the pair (i, i + 6) is already settled once i >= 6.
        let t = rps(12).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                if i == j {
                    continue;
                }
                let d = (j + 12 - i) % 12;
                let expect = d <= 5 || (d == 6 && i < 6);
                assert_eq!(t.beats(i, j), expect, "pair ({i}, {j})");
            }
        }
        assert_eq!(t.outdegree_profile(), vec![6, 6, 6, 6, 6, 6, 5, 5, 5, 5, 5, 5]);
    }

    #[test]
    fn rps_rejects_tiny_fields() {
        assert!(rps(2).is_err());
        assert!(rps(0).is_err());
    }

    #[test]
    fn mixed_block_outdegrees() {
        // Rotational-block players in ord_rps lose to the whole ordered
        // block, keeping only their single in-block win.
        let t = ord_rps(7, 4).unwrap();
        for p in 4..7 {
            assert_eq!(t.outdegree(p), 1);
        }
        assert_eq!(t.outdegree_profile(), vec![6, 5, 4, 3, 1, 1, 1]);

        let t = rps_ord(7, 4).unwrap();
        for p in 4..7 {
            assert_eq!(t.outdegree(p), 5);
        }
        assert_eq!(t.outdegree_profile(), vec![5, 5, 5, 3, 2, 1, 0]);
    }

    #[test]
    fn mixed_block_bounds() {
        assert!(ord_rps(7, 0).is_err());
        assert!(ord_rps(7, 5).is_err());
        assert!(rps_ord(4, 1).is_ok());
        assert!(rps_ord(4, 2).is_err());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let t = rps_ord(9, 3).unwrap();
        let text = t.to_text();
        let back = Tournament::from_text(&text).unwrap();
        assert_eq!(t, back);
        assert_eq!(text, back.to_text());
        // A missing final newline still parses.
        let trimmed = text.trim_end();
        assert_eq!(Tournament::from_text(trimmed).unwrap(), t);
    }

    #[test]
    fn text_format_shape() {
        let t = ordered(3).unwrap();
        assert_eq!(t.to_text(), "n=3\n-11\n0-1\n00-\n");
    }

    #[test]
    fn parse_rejects_malformed_inputs() {
        assert!(Tournament::from_text("").is_err());
        assert!(Tournament::from_text("m=3\n-11\n0-1\n00-\n").is_err());
        assert!(Tournament::from_text("n=3\n-11\n0-1\n").is_err());
        assert!(Tournament::from_text("n=3\n-11\n0-1\n00-\njunk\n").is_err());
        assert!(Tournament::from_text("n=3\n-11\n0-1\n0x-\n").is_err());
        assert!(Tournament::from_text("n=3\n-11\n0-1\n01-\n").is_err()); // both 1<->2 arcs
        assert!(Tournament::from_text("n=3\n011\n0-1\n00-\n").is_err()); // diagonal
        assert!(Tournament::from_text("n=3\n-111\n0-1\n00-\n").is_err()); // row length
    }

    #[test]
    fn relabel_preserves_structure() {
        let t = ord_rps(6, 2).unwrap();
        let perm = vec![3, 0, 5, 1, 2, 4];
        let r = t.relabel(&perm).unwrap();
        assert_eq!(t.outdegree_profile(), r.outdegree_profile());
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert_eq!(t.beats(i, j), r.beats(perm[i], perm[j]));
                }
            }
        }
        assert!(t.relabel(&[0, 0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn row_masks_match_bits() {
        let t = rps(5).unwrap();
        for i in 0..5 {
            let m = t.row_mask(i);
            for j in 0..5 {
                assert_eq!(m >> j & 1 == 1, t.beats(i, j));
            }
            assert_eq!(m.count_ones() as usize, t.outdegree(i));
        }
    }
}
