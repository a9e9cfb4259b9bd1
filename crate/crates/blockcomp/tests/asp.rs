use blockcomp::asp::{write_csv, AspParams};

#[test]
fn exact_columns_do_not_depend_on_dt() {
    let a = AspParams { ramp: 2.0, tail: 1.0, dt: 0.1, snap: 1.0, ..AspParams::default() };
    let b = AspParams { dt: 0.25, ..a.clone() };
    let (sa, sb) = (a.run().unwrap(), b.run().unwrap());
    assert_eq!(sa.len(), 4);
    for (x, y) in sa.iter().zip(&sb) {
        assert_eq!(x.t, y.t);
        assert_eq!(x.m_exact_gs, y.m_exact_gs);
        assert_eq!(x.m_target, y.m_target);
    }
}

#[test]
fn start_state_follows_field_sign() {
    let up = AspParams { ramp: 1.0, tail: 0.0, snap: 1.0, ..AspParams::default() };
    assert_eq!(up.run().unwrap()[0].m_compressed, 1.0);
    let down = AspParams { h: 1.0, jp: 2.0, ..up };
    let s = down.run().unwrap();
    assert_eq!(s[0].m_compressed, -1.0);
    assert_eq!(s[0].m_exact_gs, -1.0);
}

#[test]
fn diabatic_ramp_misses_target() {
    let fast = AspParams { ramp: 0.1, ..AspParams::default() };
    assert!(fast.final_deviation().unwrap() > 0.1);
}

#[test]
fn csv_layout() {
    let p = AspParams { ramp: 0.5, tail: 0.0, dt: 0.25, snap: 0.5, ..AspParams::default() };
    let mut buf = Vec::new();
    write_csv(&mut buf, &p.run().unwrap()).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "t,m_compressed,m_exact_instantaneous_gs,m_target_final");
    assert!(rows[1].starts_with("0,1.000000000000,1.000000000000,"));
    assert!(rows[2].starts_with("0.5,"));
}

#[test]
fn rejects_bad_parameters() {
    for p in [
        AspParams { dt: 0.0, ..AspParams::default() },
        AspParams { snap: -1.0, ..AspParams::default() },
        AspParams { tail: f64::NAN, ..AspParams::default() },
        AspParams { n: 1, ..AspParams::default() },
    ] {
        assert_eq!(p.run().unwrap_err().exit_code(), 1);
    }
}
