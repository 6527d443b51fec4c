//! C ABI surface for twistlab (populated once the core crate is complete).
