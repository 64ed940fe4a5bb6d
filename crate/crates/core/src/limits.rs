//! Process-wide expression size ceiling, checked at coarse points of the heavy pipelines.

use core::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::expr::Expr;

pub const DEFAULT_SIZE_LIMIT: usize = 1_000_000;

static SIZE_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_SIZE_LIMIT);

pub fn set_size_limit(nodes: usize) {
    SIZE_LIMIT.store(nodes, Ordering::Relaxed);
}

pub fn size_limit() -> usize {
    SIZE_LIMIT.load(Ordering::Relaxed)
}

pub fn check(e: &Expr) -> Result<()> {
    let limit = size_limit();
    let nodes = e.node_count();
    if nodes > limit {
        Err(Error::Resource { nodes, limit })
    } else {
        Ok(())
    }
}
