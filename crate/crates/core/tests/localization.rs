use qcoinv_core::hopf::*;
use qcoinv_core::qalgebra::*;
use qcoinv_core::setting::Setting;
use qcoinv_core::tensor::TensorElement;

fn gen(s: Shape, i: u8, j: u8) -> Element {
    Element::generator(s, i, j).unwrap()
}

#[test]
fn i_after_j_is_identity_on_generators() {
    for (n, t) in [(2u8, 1u8), (3, 2)] {
        let s = Setting::new(n, t, n);
        let (ys, zs) = (s.y_shape(), s.z_shape());
        let mut samples = vec![
            s.v_loc_element(&Element::one(ys), &Element::one(zs), 0, 0),
            s.v_loc_element(&Element::one(ys), &Element::one(zs), 1, 1),
        ];
        for g in 0..ys.num_gens() as u8 {
            let (i, j) = ys.pos(g);
            samples.push(s.v_loc_element(&gen(ys, i, j), &Element::one(zs), 0, 0));
        }
        for g in 0..zs.num_gens() as u8 {
            let (i, j) = zs.pos(g);
            samples.push(s.v_loc_element(&Element::one(ys), &gen(zs, i, j), 0, 0));
        }
        for v in samples {
            let back = s.i_star(&s.j_star(&v).unwrap()).unwrap();
            assert!(back.equals(&v), "({n},{t}): {v} -> {back}");
        }
    }
}

#[test]
fn i_star_examples() {
    let s = Setting::new(3, 2, 3);
    let one = TensorElement::one(vec![s.x_loc(), gl_factor(2)]);
    assert!(s.i_star(&one).unwrap().equals(&TensorElement::one(s.v_factors(true))));
    let x = TensorElement::from_element(s.x_loc(), &gen(s.x_shape(), 1, 2)).outer(&gl_one(2));
    let expected = s.theta_star(&gen(s.x_shape(), 1, 2));
    let got = s.i_star(&x).unwrap();
    assert_eq!(got.terms(), expected.terms());
    let dt = TensorElement::one(vec![s.x_loc()]).outer(&d_t_power(2, 1));
    let dz = s.v_loc_element(&Element::one(s.y_shape()), s.d_z().unwrap().element(), 0, 0);
    assert!(s.i_star(&dt).unwrap().equals(&dz));
}

#[test]
fn j_star_of_one() {
    let s = Setting::new(2, 1, 2);
    let v = s.v_loc_element(&Element::one(s.y_shape()), &Element::one(s.z_shape()), 0, 0);
    let j = s.j_star(&v).unwrap();
    assert!(j.equals(&TensorElement::one(vec![s.x_loc(), gl_factor(1)])));
}

#[test]
fn inj_examples() {
    let s = Setting::new(3, 2, 3);
    let t11 = gl_generator(2, 1, 1);
    let z = t11.apply_factor_map(0, &s.inj_gl_to_z());
    assert!(z.equals(&TensorElement::from_element(s.z_factor(true), &gen(s.z_shape(), 1, 1))));
    let y = t11.apply_factor_map(0, &s.inj_gl_to_y());
    assert!(y.equals(&TensorElement::from_element(s.y_factor(true), &gen(s.y_shape(), 2, 1))));
    let dz = d_t_power(2, 1).apply_factor_map(0, &s.inj_gl_to_z());
    assert!(dz.equals(&TensorElement::from_element(s.z_factor(true), s.d_z().unwrap().element())));
}

#[test]
fn normality_of_distinguished_minors() {
    for m in 1..=3u8 {
        for n in 1..=3u8 {
            for t in 1..=2u8.min(m).min(n) {
                let s = Setting::new(m, t, n);
                for d in [s.d_x(), s.d_y(), s.d_z()] {
                    assert!(d.unwrap().verify());
                }
            }
        }
    }
}
