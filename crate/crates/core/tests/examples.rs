macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect("example should run");
        }
    };
}

example!(double_hurwitz, "double_hurwitz.rs");
example!(connected_vs_disconnected, "connected_vs_disconnected.rs");
example!(wreath_hurwitz, "wreath_hurwitz.rs");
example!(hodge_integrals, "hodge_integrals.rs");
example!(one_part_series, "one_part_series.rs");
example!(abelian_pullback, "abelian_pullback.rs");
example!(verify, "verify.rs");
