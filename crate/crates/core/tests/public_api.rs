use lerch::{
    classify, evaluate, evaluate_on_cover, BranchState, Complex64, EvalOptions64, LerchError, Method, Point3, Point3f64,
    RegionTag, Word,
};

#[test]
fn crate_root_aliases() {
    let p: Point3f64 = Point3::real(0.5, 0.5, 0.5);
    assert_eq!(classify(&p).unwrap(), RegionTag::OmegaTilde);
    let v = evaluate(&p, 1e-12).unwrap();
    assert_eq!(v.method, Method::Series);
    assert!((v.value - Complex64::new(0.944_258_314_238_200_1, 0.0)).norm() < 1e-11);
    let opts = EvalOptions64::default();
    assert_eq!(opts.cauchy.radius, 1e-2);
}

#[test]
fn words_and_branch_states_agree() {
    let w: Word = "X0 Y-1^2 X0^-1 X1".parse().unwrap();
    let b: BranchState = "kx[1]=1 ky[-1]=2".parse().unwrap();
    assert_eq!(w.abelianize(), b);
    let p = Point3::new(Complex64::new(0.3, 0.1), Complex64::new(0.4, 0.05), Complex64::new(0.6, -0.05));
    let via_word = evaluate_on_cover(&p, &w.abelianize(), 1e-12).unwrap();
    let via_state = evaluate_on_cover(&p, &b, 1e-12).unwrap();
    assert_eq!(via_word.value, via_state.value);
}

#[test]
fn errors_have_stable_kinds() {
    let e = evaluate(&Point3::real(0.5, 2.0, 0.5), 1e-10).unwrap_err();
    assert_eq!(e.kind(), "InvalidPoint");
    let e = evaluate(&Point3::new(Complex64::new(0.5, 0.0), Complex64::new(1.0, -1.0), Complex64::new(0.5, 0.0)), 1e-10)
        .unwrap_err();
    assert!(matches!(e, LerchError::CutViolation(_)));
}

#[test]
fn single_precision_evaluation() {
    let p: Point3<f32> = Point3::real(2.0, 0.25, 0.5);
    let v = evaluate(&p, 1e-5f32).unwrap();
    let w = evaluate(&Point3::real(2.0f64, 0.25, 0.5), 1e-12).unwrap();
    assert!((v.value.re as f64 - w.value.re).abs() < 1e-4);
    assert!((v.value.im as f64 - w.value.im).abs() < 1e-4);
}
