//! Holds the `acceptance` test target; run it with `cargo test -p wiener-validation --test acceptance`.
