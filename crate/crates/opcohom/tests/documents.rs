use opcohom::doc::{self, Cochain2Doc, Cochain3Doc, FactorSetDoc, H3Doc, ModuleDoc, ReportDoc};
use opcohom_core::catalog::desk_configs;
use opcohom_core::classify::{enumerate_z3, verify_omega};
use opcohom_core::cochain::{d1, Cochain1};
use opcohom_core::factorset::{factor_set_from_cocycle, strictify, validate_factor_set};
use opcohom_core::grcat::{build_gr_category, GrCategory};
use opcohom_core::homology::{compute_h3, Method, DEFAULT_CAP};

#[test]
fn core_values_survive_documents() {
    for em in desk_configs().into_iter().filter(|em| em.pi().order() * em.gamma.order() <= 4) {
        let mdoc = doc::module_to_doc(&em);
        assert_eq!(doc::module_from_doc(&doc::parse::<ModuleDoc>(&doc::emit(&mdoc)).unwrap()).unwrap(), em);

        let h3 = compute_h3(&em, Method::Snf, DEFAULT_CAP).unwrap();
        let hdoc = doc::h3_to_doc(&h3);
        assert_eq!(doc::parse::<H3Doc>(&doc::emit(&hdoc)).unwrap(), hdoc);

        let f = Cochain1 { n: em.pi().order(), f: (0..em.pi().order()).map(|x| x % em.a().order()).collect() };
        let g = d1(&em, &f);
        let gdoc = doc::cochain2_to_doc(&g);
        assert_eq!(doc::cochain2_from_doc(&em, &doc::parse::<Cochain2Doc>(&doc::emit(&gdoc)).unwrap()).unwrap(), g);
        assert_eq!(doc::cochain1_from_doc(&em, &doc::cochain1_to_doc(&f)).unwrap(), f);

        for h in enumerate_z3(&em, None, DEFAULT_CAP).unwrap() {
            let cdoc = doc::cochain3_to_doc(&h);
            assert_eq!(doc::cochain3_from_doc(&em, &doc::parse::<Cochain3Doc>(&doc::emit(&cdoc)).unwrap()).unwrap(), h);
            let base = build_gr_category(em.base.clone(), h.ppp.clone()).unwrap();
            let cat = doc::category_to_doc(&base);
            assert_eq!(doc::category_from_doc(&cat).unwrap(), base);
            let fs = factor_set_from_cocycle(&base, &em, &h).unwrap();
            let fdoc = doc::factor_set_to_doc(&fs);
            let back = doc::factor_set_from_doc(&doc::parse::<FactorSetDoc>(&doc::emit(&fdoc)).unwrap()).unwrap();
            assert_eq!(back, fs);
            let (_, w) = strictify(&fs);
            assert_eq!(doc::witness_from_doc(&fs, &doc::witness_to_doc(&w, fs.m())).unwrap(), w);
            let r = validate_factor_set(&fs, false);
            assert_eq!(doc::report_from_doc(&doc::parse::<ReportDoc>(&doc::emit(&doc::report_to_doc(&r))).unwrap()), r);
        }
    }
}

#[test]
fn classification_document_round_trips() {
    let em = desk_configs().into_iter().find(|em| em.pi().order() == 2 && em.gamma.order() == 2 && em.a().order() == 2).unwrap();
    let r = verify_omega(&em, &GrCategory::strict(em.base.clone()), DEFAULT_CAP).unwrap();
    let d = doc::classification_to_doc(&r);
    let text = doc::emit(&d);
    assert_eq!(doc::parse::<doc::ClassificationDoc>(&text).unwrap(), d);
    assert_eq!(doc::emit(&doc::parse::<doc::ClassificationDoc>(&text).unwrap()), text);
}
