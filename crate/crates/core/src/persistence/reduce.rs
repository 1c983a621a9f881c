use super::BoundaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionStrategy {
    /// Left-to-right column reduction over the whole matrix.
    Standard,
    /// Highest dimension first, zeroing every column already known to be a pivot row
    /// (clearing). Produces the same pairing as `Standard`.
    #[default]
    Twist,
}

/// Result of reducing a boundary matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// `(birth position, death position)` for every nonzero reduced column, ordered by death.
    pub pairs: Vec<(usize, usize)>,
    /// Positions that are neither a pivot row nor a nonzero column: essential classes.
    pub essential: Vec<usize>,
    /// Number of columns of the reduced matrix.
    pub n_columns: usize,
}

impl Reduction {
    /// The partner of every position in the pairing, if any.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n_columns];
        for &(b, d) in &self.pairs {
            p[b] = Some(d);
            p[d] = Some(b);
        }
        p
    }
}

pub fn reduce(matrix: &BoundaryMatrix) -> Reduction {
    reduce_with(matrix, ReductionStrategy::default())
}

const NONE: u32 = u32::MAX;

/// Reduced columns that own a pivot. Columns left unchanged by reduction are read from
/// the original matrix; only modified ones are copied into the arena.
struct Reducer<'a> {
    matrix: &'a BoundaryMatrix,
    /// `pivot_owner[row]` = column whose lowest entry is `row`
    pivot_owner: Vec<u32>,
    slot: Vec<u32>,
    arena: Vec<Vec<u32>>,
    work: Vec<u32>,
    scratch: Vec<u32>,
}

impl Reducer<'_> {
    fn reduced(&self, j: usize) -> &[u32] {
        match self.slot[j] {
            NONE => self.matrix.column(j),
            s => &self.arena[s as usize],
        }
    }

    fn reduce_column(&mut self, j: usize) {
        let original = self.matrix.column(j);
        let Some(&first_low) = original.last() else {
            return;
        };
        if self.pivot_owner[first_low as usize] == NONE {
            self.pivot_owner[first_low as usize] = j as u32;
            return;
        }
        self.work.clear();
        self.work.extend_from_slice(original);
        while let Some(&low) = self.work.last() {
            let owner = self.pivot_owner[low as usize];
            if owner == NONE {
                self.pivot_owner[low as usize] = j as u32;
                self.slot[j] = self.arena.len() as u32;
                self.arena.push(std::mem::take(&mut self.work));
                return;
            }
            let mut scratch = std::mem::take(&mut self.scratch);
            symmetric_difference(&self.work, self.reduced(owner as usize), &mut scratch);
            self.scratch = std::mem::replace(&mut self.work, scratch);
        }
    }
}

pub fn reduce_with(matrix: &BoundaryMatrix, strategy: ReductionStrategy) -> Reduction {
    let n = matrix.len();
    assert!(n < NONE as usize, "boundary matrix too large");
    let mut r = Reducer {
        matrix,
        pivot_owner: vec![NONE; n],
        slot: vec![NONE; n],
        arena: Vec::new(),
        work: Vec::new(),
        scratch: Vec::new(),
    };

    match strategy {
        ReductionStrategy::Standard => {
            for j in 0..n {
                r.reduce_column(j);
            }
        }
        ReductionStrategy::Twist => {
            let top = (0..n).map(|j| matrix.dimension(j)).max().unwrap_or(0);
            for dim in (1..=top).rev() {
                for j in 0..n {
                    // a column that is some pivot row is a birth; its reduction is zero
                    if matrix.dimension(j) == dim && r.pivot_owner[j] == NONE {
                        r.reduce_column(j);
                    }
                }
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = r
        .pivot_owner
        .iter()
        .enumerate()
        .filter(|&(_, &owner)| owner != NONE)
        .map(|(low, &owner)| (low, owner as usize))
        .collect();
    pairs.sort_unstable_by_key(|&(_, d)| d);
    let mut paired = vec![false; n];
    for &(b, d) in &pairs {
        paired[b] = true;
        paired[d] = true;
    }
    let essential = (0..n).filter(|&i| !paired[i]).collect();
    Reduction {
        pairs,
        essential,
        n_columns: n,
    }
}

/// `out = a xor b` for ascending index lists.
fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
