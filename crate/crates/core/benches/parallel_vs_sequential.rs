//! Placeholder bench; filled in once scanning lands.
fn main() {}
