//! Truncation-order guards for the series builders.
//!
//! Enumeration-backed builders walk every partition of every size up to the
//! order, so they are capped at [`MAX_ENUM_ORDER`]; closed-form builders only
//! do polynomial arithmetic and allow [`MAX_CLOSED_ORDER`]. The environment
//! variable `QPD_MAX_ORDER` raises both caps (unsupported territory: runtimes
//! and memory grow quickly past the defaults).

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Max order for builders that enumerate partitions.
pub const MAX_ENUM_ORDER: usize = 60;
/// Max order for closed-form (Pochhammer/pentagonal) builders.
pub const MAX_CLOSED_ORDER: usize = 200;

fn override_limit() -> Option<usize> {
    static OVERRIDE: OnceLock<Option<usize>> = OnceLock::new();
    *OVERRIDE.get_or_init(|| {
        std::env::var("QPD_MAX_ORDER")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    })
}

pub fn check_enum_order(order: usize) -> Result<()> {
    let max = override_limit().unwrap_or(MAX_ENUM_ORDER).max(MAX_ENUM_ORDER);
    if order > max {
        return Err(Error::OrderTooLarge {
            requested: order,
            max,
        });
    }
    Ok(())
}

pub fn check_closed_order(order: usize) -> Result<()> {
    let max = override_limit()
        .unwrap_or(MAX_CLOSED_ORDER)
        .max(MAX_CLOSED_ORDER);
    if order > max {
        return Err(Error::OrderTooLarge {
            requested: order,
            max,
        });
    }
    Ok(())
}
