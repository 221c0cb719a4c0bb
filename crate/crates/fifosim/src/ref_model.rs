//! Golden reference model for the scoreboard.
//!
//! [`RefQueue`] is a deliberately naive bounded queue: push appends unless
//! the queue is at capacity, pop removes from the front unless it is empty.
//! It shares no code, no pointer arithmetic, and no flag logic with
//! [`crate::fifo::Fifo`] — the whole point is that the two arrive at the
//! same observable behavior by different routes, so a bug in one cannot
//! silently cancel out in the other.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RefQueue {
    items: VecDeque<u64>,
    capacity: usize,
}

impl RefQueue {
    pub fn new(capacity: usize) -> Self {
        Self { items: VecDeque::with_capacity(capacity), capacity }
    }

    /// Append `data`; returns whether the queue accepted it.
    pub fn push(&mut self, data: u64) -> bool {
        if self.items.len() == self.capacity {
            return false;
        }
        self.items.push_back(data);
        true
    }

    /// Remove and return the oldest entry, or `None` when empty.
    pub fn pop(&mut self) -> Option<u64> {
        self.items.pop_front()
    }

    /// Status flags as `(full, empty)`.
    pub fn flags(&self) -> (bool, bool) {
        (self.is_full(), self.is_empty())
    }

    pub fn is_full(&self) -> bool {
        self.items.len() == self.capacity
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Clear all entries, as a synchronous reset would.
    pub fn reset(&mut self) {
        self.items.clear();
    }
}
