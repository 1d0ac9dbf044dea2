mod props;

macro_rules! suite {
    ($($name:ident),*) => {$(
        #[test]
        fn $name() {
            let o = props::$name();
            assert!(o.result.is_ok(), "{}: {}", o.name, o.result.unwrap_err());
        }
    )*};
}

suite!(
    snf_divisibility,
    snf_unimodular_invariance,
    coset_relator_tracing,
    transversal_independence,
    canonicalize_invariance,
    tree_distances,
    tree_acyclicity,
    certificate_reevaluation
);
