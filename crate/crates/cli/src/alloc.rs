//! Heap allocation counting.
//!
//! Install [`CountingAllocator`] as the global allocator, then wrap the code
//! of interest in [`count_allocations`]. Only allocations made on the calling
//! thread while the closure runs are counted.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;

thread_local! {
    static ACTIVE: Cell<bool> = const { Cell::new(false) };
    static COUNT: Cell<u64> = const { Cell::new(0) };
}

pub struct CountingAllocator;

#[inline]
fn note() {
    // try_with: the thread-locals may already be gone during thread teardown
    let _ = ACTIVE.try_with(|active| {
        if active.get() {
            let _ = COUNT.try_with(|c| c.set(c.get() + 1));
        }
    });
}

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        note();
        System.alloc(layout)
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        note();
        System.alloc_zeroed(layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        note();
        System.realloc(ptr, layout, new_size)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }
}

/// Runs `f` and returns its result with the number of allocations
/// (including reallocations) it made on this thread.
pub fn count_allocations<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let outer = ACTIVE.with(|a| a.replace(true));
    let before = COUNT.with(Cell::get);
    let r = f();
    let n = COUNT.with(Cell::get) - before;
    ACTIVE.with(|a| a.set(outer));
    (r, n)
}

/// Whether [`CountingAllocator`] is the global allocator of this process.
pub fn counting_installed() -> bool {
    let (_, n) = count_allocations(|| std::hint::black_box(Box::new(0u64)));
    n > 0
}
