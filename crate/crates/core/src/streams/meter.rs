//! Unit budgets and the common interface of budgeted enumerations.

/// A budget of abstract work units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Meter {
    limit: u64,
    spent: u64,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Meter { limit, spent: 0 }
    }

    /// Spend one unit; false once the budget is used up.
    #[inline]
    pub fn charge(&mut self) -> bool {
        if self.spent < self.limit {
            self.spent += 1;
            true
        } else {
            false
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.spent
    }

    pub fn is_exhausted(&self) -> bool {
        self.spent >= self.limit
    }
}

/// A deterministic enumeration driven in unit steps.
///
/// Running with budget `a` and then `b` reaches the same state as running
/// with `a + b` at once.
pub trait Enumeration {
    type Item;

    /// Work until the meter runs dry.
    fn advance(&mut self, meter: &mut Meter);

    /// Everything emitted so far, in order.
    fn emitted(&self) -> &[Self::Item];

    /// Units consumed so far.
    fn spent(&self) -> u64;

    /// Work for `budget` more units; returns the number of new items.
    fn run(&mut self, budget: u64) -> usize {
        let before = self.emitted().len();
        let mut m = Meter::new(budget);
        self.advance(&mut m);
        self.emitted().len() - before
    }
}
