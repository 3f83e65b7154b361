use alloc::string::String;
use alloc::vec::Vec;

/// One named law and, if it failed, the lexicographically first index tuple
/// at which it failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Vec<usize>>,
}

/// Total (non fail-fast) list of law checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, witness: Option<Vec<usize>>) {
        self.checks.push(Check {
            name: name.into(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Panics if no check with this name was recorded.
    pub fn passes(&self, name: &str) -> bool {
        self.get(name)
            .unwrap_or_else(|| panic!("no check named {name}"))
            .pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

/// First tuple (in iteration order) where `holds` is false.
pub(crate) fn first_failure<I, F>(tuples: I, mut holds: F) -> Option<Vec<usize>>
where
    I: IntoIterator<Item = Vec<usize>>,
    F: FnMut(&[usize]) -> bool,
{
    tuples.into_iter().find(|t| !holds(t))
}

/// All tuples in `0..dims[0] x 0..dims[1] x ...` in lexicographic order.
pub fn tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut flat| {
        let mut out = alloc::vec![0; dims.len()];
        for (slot, &d) in out.iter_mut().zip(dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    })
}
