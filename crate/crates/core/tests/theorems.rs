use qcoinv_core::linalg::Specialization;
use qcoinv_core::setting::Setting;
use qcoinv_core::theorems::*;

fn opts() -> SuiteOptions {
    SuiteOptions::default()
}

fn dims<'a>(r: &'a VerificationReport, index: &str) -> &'a std::collections::BTreeMap<String, usize> {
    &r.components.iter().find(|c| c.index == index).unwrap_or_else(|| panic!("no component {index}")).dims
}

#[test]
fn sft_small_cases() {
    let r = verify_sft(&Setting::new(2, 1, 2), 3, &opts()).unwrap();
    assert!(r.pass, "{}", r.table());
    assert_eq!(dims(&r, "d=2")["ker"], 1);
    assert_eq!(dims(&r, "d=2")["ideal"], 1);
    assert_eq!(dims(&r, "d=1")["ker"], 0);
    let r = verify_sft(&Setting::new(2, 2, 2), 3, &opts()).unwrap();
    assert!(r.pass);
    assert!(r.components.iter().all(|c| c.dims["ker"] == 0 && c.dims["ideal"] == 0));
}

#[test]
fn fft_small_cases() {
    let r = verify_fft(&Setting::new(2, 1, 2), &[(0, 0), (1, 1), (1, 2), (2, 1)], &opts()).unwrap();
    assert!(r.pass, "{}", r.table());
    assert_eq!(dims(&r, "(1,1)")["coinvariants"], 4);
    assert_eq!(dims(&r, "(1,1)")["image"], 4);
    assert_eq!(dims(&r, "(0,0)")["coinvariants"], 1);
    assert_eq!(dims(&r, "(1,2)")["coinvariants"], 0);
}

#[test]
fn sl_fft_small_cases() {
    let r = verify_sl_fft(&Setting::new(2, 2, 2), &[(2, 0), (1, 0), (1, 1), (0, 2), (3, 0)], &opts()).unwrap();
    assert!(r.pass, "{}", r.table());
    assert_eq!(dims(&r, "(2,0)")["semi"], 1);
    assert_eq!(dims(&r, "(1,0)")["semi"], 0);
    assert_eq!(dims(&r, "(3,0)")["semi"], 0);
}

#[test]
fn sl_and_plain_fft_agree_on_the_diagonal() {
    let s = Setting::new(2, 1, 2);
    let a = verify_fft(&s, &[(2, 2)], &opts()).unwrap();
    let b = verify_sl_fft(&s, &[(2, 2)], &opts()).unwrap();
    assert_eq!(a.components[0].dims["coinvariants"], b.components[0].dims["semi"]);
}

#[test]
fn preimage_small_cases() {
    let r = verify_preimage_dx(2, 1, 3, &opts()).unwrap();
    assert!(r.pass, "{}", r.table());
    assert_eq!(dims(&r, "dX d=1")["intersection"], 1);
    assert_eq!(dims(&r, "dX d=0")["intersection"], 0);
    let r = verify_preimage_p(2, 1, 1, 2, &opts()).unwrap();
    assert!(r.pass, "{}", r.table());
    assert_eq!(dims(&r, "P1^1 d=1")["preimage"], 2);
    let r = verify_preimage_p(2, 1, 0, 2, &opts()).unwrap();
    assert!(r.pass);
}

#[test]
fn specialized_mode_is_advisory_and_agrees() {
    let o = SuiteOptions { spec: Specialization::At(qcoinv_core::Rational::new(3.into(), 2.into())), ..opts() };
    let r = verify_sft(&Setting::new(2, 1, 2), 3, &o).unwrap();
    assert!(r.advisory && r.pass);
    let exact = verify_sft(&Setting::new(2, 1, 2), 3, &opts()).unwrap();
    assert_eq!(r.components, exact.components);
}
