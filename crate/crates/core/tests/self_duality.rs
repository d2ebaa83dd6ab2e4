mod common;

use common::model;
use hypfocal::{
    classify_d, classify_dual_d, classify_dual_h, classify_h, frenet_data, linspace,
    singular_locus_d, singular_locus_h, Error, FramedCurveModel, SingularPointRecord,
    SingularityType as S,
};

// M = c·A keeps MA′ − M′A ≡ 0; N = t − 1 vanishes at t = 1.
fn quartet(c: f64) -> FramedCurveModel {
    model(&format!("{c}*(1 + 0.2*sin(t))"), "t - 1", "1 + 0.2*sin(t)", "0", 2.0)
}

fn at_zero(recs: &[SingularPointRecord]) -> &SingularPointRecord {
    recs.iter().min_by(|a, b| a.param.theta.abs().total_cmp(&b.param.theta.abs())).unwrap()
}

fn never_excluded(kind: S) {
    assert!(!matches!(kind, S::Swallowtail | S::CuspidalCrossCap | S::CuspidalBeaks | S::CuspidalLips));
}

fn hyperbolic_table(c: f64) {
    let m = quartet(c);
    for t in linspace(0.0, 2.0, 21) {
        let d = frenet_data(&m, t).unwrap();
        let n_zero = d.n.abs() < 1e-12;
        let m_zero = d.m.abs() < 1e-12;
        let recs = singular_locus_h(&m, &[t]).unwrap();
        let r = at_zero(&recs);
        assert!(r.param.theta.abs() < 1e-12, "(t,0) is singular");
        assert_eq!(classify_h(&m, r).unwrap().kind, r.kind);
        for rec in &recs {
            never_excluded(rec.kind);
        }
        if !n_zero {
            assert_eq!(r.kind == S::CuspidalEdge, !m_zero, "F^h c={c} t={t}");
            let dual = classify_dual_h(&m, t).unwrap();
            assert_eq!(dual[0].kind == S::CuspidalEdge, !m_zero, "dual c={c} t={t}");
            dual.iter().for_each(|x| never_excluded(x.kind));
        } else {
            assert!(r.whole_fiber);
            assert_ne!(r.kind, S::CuspidalEdge);
            for rec in recs.iter().filter(|x| x.param.theta.abs() > 1e-9) {
                assert_eq!(rec.kind, S::CuspidalEdge, "theta={}", rec.param.theta);
            }
            assert!(matches!(classify_dual_h(&m, t), Err(Error::EvoluteUndefined { .. })));
        }
    }
}

fn de_sitter_table(c: f64) {
    let m = quartet(1.0 / c);
    for t in linspace(0.0, 2.0, 21) {
        let d = frenet_data(&m, t).unwrap();
        let n_zero = d.n.abs() < 1e-12;
        let recs = singular_locus_d(&m, &[t]).unwrap();
        let r = at_zero(&recs);
        assert!(r.param.theta.abs() < 1e-12);
        assert_eq!(classify_d(&m, r).unwrap().kind, r.kind);
        for rec in &recs {
            never_excluded(rec.kind);
        }
        if !n_zero {
            assert_eq!(r.kind, S::CuspidalEdge, "F^d c={c} t={t}");
            let dual = classify_dual_d(&m, t).unwrap();
            assert_eq!(dual[0].kind, S::CuspidalEdge);
        } else {
            assert!(r.whole_fiber);
            assert_ne!(r.kind, S::CuspidalEdge);
            let far = |th: f64| th.abs() > 1e-9 && (th.abs() - std::f64::consts::PI).abs() > 1e-9;
            for rec in recs.iter().filter(|x| far(x.param.theta)) {
                assert_eq!(rec.kind, S::CuspidalEdge, "theta={}", rec.param.theta);
            }
            assert!(classify_dual_d(&m, t).is_err());
        }
    }
}

#[test]
fn hyperbolic_self_duality_table() {
    for c in [0.3, 0.5, 0.9] {
        hyperbolic_table(c);
    }
}

#[test]
fn hyperbolic_table_with_vanishing_m() {
    hyperbolic_table(0.0);
}

#[test]
fn de_sitter_self_duality_table() {
    for c in [0.3, 0.5, 0.9] {
        de_sitter_table(c);
    }
}
