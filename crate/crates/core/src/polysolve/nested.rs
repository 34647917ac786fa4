//! Nested two-variable roots (placeholder while building bottom-up).
pub struct SeriesPoly2;
pub struct NestedRoot;
pub fn nested_roots() {}
