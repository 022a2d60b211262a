use qcoinv_core::comodule::*;
use qcoinv_core::hopf::*;
use qcoinv_core::qalgebra::*;
use qcoinv_core::setting::Setting;
use qcoinv_core::tensor::TensorElement;

fn minor(s: Shape, idx: MinorIndex) -> Element {
    quantum_minor(s, &idx).unwrap()
}

#[test]
fn theta_of_generator_and_of_lower_left_minor() {
    for (m, t, n) in [(2, 1, 2), (3, 2, 3), (2, 2, 3), (3, 1, 2)] {
        let s = Setting::new(m, t, n);
        let x = s.theta_star(&Element::generator(s.x_shape(), 1, 2).unwrap());
        let mut expected = TensorElement::zero(s.v_factors(false));
        for k in 1..=t {
            expected = &expected
                + &s.v_element(
                    &Element::generator(s.y_shape(), 1, k).unwrap(),
                    &Element::generator(s.z_shape(), k, 2).unwrap(),
                );
        }
        assert!(x.equals(&expected));
        let dx = minor(s.x_shape(), s.lower_left(m));
        let dy = minor(s.y_shape(), s.lower_left(m));
        let dz = minor(s.z_shape(), MinorIndex::solid(1..=t, 1..=t));
        assert!(s.theta_star(&dx).equals(&s.v_element(&dy, &dz)), "({m},{t},{n})");
        let one = Element::one(s.x_shape());
        assert!(s.theta_star(&one).equals(&TensorElement::one(s.v_factors(false))));
    }
}

#[test]
fn rho_and_lambda_on_minors() {
    let s = Setting::new(3, 2, 3);
    let dy = TensorElement::from_element(s.y_factor(false), &minor(s.y_shape(), s.lower_left(3)));
    assert!(rho_star(&dy).equals(&dy.outer(&d_t_power(2, 1))));
    let dz = TensorElement::from_element(s.z_factor(false), &minor(s.z_shape(), MinorIndex::solid(1..=2, 1..=2)));
    assert!(lambda_star(&dz).equals(&d_t_power(2, 1).outer(&dz)));
}

#[test]
fn gamma_examples() {
    for (m, t, n) in [(2, 1, 2), (2, 2, 2), (3, 2, 2)] {
        let s = Setting::new(m, t, n);
        for g in 0..s.x_shape().num_gens() as u8 {
            let (i, j) = s.x_shape().pos(g);
            let v = s.theta_star(&Element::generator(s.x_shape(), i, j).unwrap());
            assert!(is_coinvariant(&v));
        }
        let dy = minor(s.y_shape(), s.lower_left(m));
        let dz = minor(s.z_shape(), MinorIndex::solid(1..=t, 1..=t));
        let y1 = s.v_element(&dy, &Element::one(s.z_shape()));
        assert!(gamma_star(&y1).equals(&d_t_power(t, -1).outer(&y1)));
        assert!(!is_coinvariant(&y1));
        assert!(is_semi_coinvariant(&y1, 1));
        assert!(is_sl_coinvariant(&y1));
        let z1 = s.v_element(&Element::one(s.y_shape()), &dz);
        assert!(is_semi_coinvariant(&z1, -1));
        assert!(is_coinvariant(&TensorElement::zero(s.v_factors(false))));
    }
    let s = Setting::new(2, 2, 2);
    let y11 = s.v_element(&Element::generator(s.y_shape(), 1, 1).unwrap(), &Element::one(s.z_shape()));
    assert!(!is_sl_coinvariant(&y11));
}

#[test]
fn torus_weights_of_generators() {
    let s = Setting::new(2, 2, 3);
    let y = s.v_element(&Element::generator(s.y_shape(), 2, 1).unwrap(), &Element::one(s.z_shape()));
    assert!(torus_weight(&y, (1, 0)).unwrap());
    let z = s.v_element(&Element::one(s.y_shape()), &Element::generator(s.z_shape(), 1, 3).unwrap());
    assert!(torus_weight(&z, (0, 1)).unwrap());
    assert!(torus_weight(&TensorElement::one(s.v_factors(false)), (0, 0)).unwrap());
    assert!(torus_weight(&y, (0, 1)).is_err());
}

#[test]
fn xi_examples() {
    let s = Setting::new(2, 2, 2);
    let x = Element::generator(s.x_shape(), 1, 2).unwrap();
    let xf = TensorElement::from_element(s.x_factor(), &x);
    assert!(is_xi_coinvariant(&xf.outer(&gl_one(2))).unwrap());
    let v = xf.outer(&gl_generator(2, 1, 2));
    let mut expected = TensorElement::zero(vec![gl_factor(2), s.x_factor(), gl_factor(2)]);
    for k in 1..=2 {
        expected = &expected + &gl_generator(2, 1, k).outer(&xf).outer(&gl_generator(2, k, 2));
    }
    assert!(xi_star(&v).unwrap().equals(&expected));
    assert!(!is_xi_coinvariant(&xf.outer(&d_t_power(2, 1))).unwrap());
}
