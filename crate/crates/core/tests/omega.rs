use opcohom_core::catalog::desk_configs;
use opcohom_core::classify::verify_omega;
use opcohom_core::grcat::GrCategory;
use opcohom_core::homology::DEFAULT_CAP;

#[test]
fn congruence_matches_cohomology_on_desk_configs() {
    for em in desk_configs().into_iter().filter(|em| em.pi().order() * em.gamma.order() <= 6) {
        let r = verify_omega(&em, &GrCategory::strict(em.base.clone()), DEFAULT_CAP).unwrap();
        let label = format!("{:?} {:?} {:?}", em.base.pi_on_a, em.gamma_on_pi, em.gamma_on_a);
        for name in ["factor_sets_valid", "well_defined", "surjective", "crossed_products", "congruence_equivalences"] {
            assert!(r.checks.passes(name), "{name} fails for {label}");
        }
        assert_eq!(r.congruence_classes, r.cohomology_classes, "{label}");
        assert!(r.factor_set_classes >= r.cohomology_classes, "{label}");
        assert_eq!(r.bijection_verified, r.factor_set_classes == r.cohomology_classes, "{label}");
    }
}
