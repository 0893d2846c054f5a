mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satcov::analytic::{gamma_params, sensitivity, SensitivityTarget};
use satcov::geometry::{polar_angle_at_range, ClusterGeometry, Region, SystemParams};

fn with_cluster_range(p: &SystemParams, r: f64) -> (SystemParams, ClusterGeometry) {
    let mut q = p.clone();
    q.cluster_polar_angle_rad = polar_angle_at_range(p, r);
    let g = ClusterGeometry::new(&q).unwrap();
    (q, g)
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn signs_and_finite_differences_on_fuzzed_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e45);
    let mut worst = 0.0f64;
    for case in 0..1000 {
        let p = common::fuzzed_params(core::array::from_fn(|_| rng.random::<f64>()));
        let g = ClusterGeometry::new(&p).unwrap();
        let m = p.nakagami_m;

        let dk = sensitivity(&p, &g, m, SensitivityTarget::ClusterShapeVsRange).unwrap();
        let dth = sensitivity(&p, &g, m, SensitivityTarget::ClusterScaleVsRange).unwrap();
        assert!(dk.value > 0.0 && !dk.at_boundary, "case {case}: dk/dR = {}", dk.value);
        assert!(dth.value < 0.0, "case {case}: dθ/dR = {}", dth.value);

        let r = g.r_clu_km;
        let h = 1e-3 * (r - g.r_min_km).min(g.r_max_km - r);
        let (pp, gp) = with_cluster_range(&p, r + h);
        let (pm, gm) = with_cluster_range(&p, r - h);
        let up = gamma_params(&pp, &gp, Region::Cluster, m).unwrap();
        let dn = gamma_params(&pm, &gm, Region::Cluster, m).unwrap();
        let fd_k = (up.shape - dn.shape) / (gp.r_clu_km - gm.r_clu_km);
        let fd_t = (up.scale - dn.scale) / (gp.r_clu_km - gm.r_clu_km);
        for (name, exact, fd) in [("dk/dR", dk.value, fd_k), ("dθ/dR", dth.value, fd_t)] {
            let e = rel_err(fd, exact);
            worst = worst.max(e);
            assert!(e <= 1e-4, "case {case}: {name} exact {exact} fd {fd} rel {e}");
        }

        let hm = 1e-4 * m;
        for region in [Region::Cluster, Region::Outside] {
            let dkm = sensitivity(&p, &g, m, SensitivityTarget::ShapeVsM(region)).unwrap().value;
            let dtm = sensitivity(&p, &g, m, SensitivityTarget::ScaleVsM(region)).unwrap().value;
            assert!(dkm > 0.0, "case {case}: dk/dm = {dkm} in {region:?}");
            assert!(dtm < 0.0, "case {case}: dθ/dm = {dtm} in {region:?}");
            let up = gamma_params(&p, &g, region, m + hm).unwrap();
            let dn = gamma_params(&p, &g, region, m - hm).unwrap();
            let fd_k = (up.shape - dn.shape) / (2.0 * hm);
            let fd_t = (up.scale - dn.scale) / (2.0 * hm);
            for (name, exact, fd) in [("dk/dm", dkm, fd_k), ("dθ/dm", dtm, fd_t)] {
                let e = rel_err(fd, exact);
                worst = worst.max(e);
                assert!(e <= 1e-4, "case {case}: {name} {region:?} exact {exact} fd {fd} rel {e}");
            }
        }
    }
    println!("worst relative finite-difference error: {worst:.3e}");
}

#[test]
fn boundary_limit_is_flagged_and_continuous() {
    let mut p = SystemParams::reference(50.0);
    p.cluster_polar_angle_rad = 1e-7;
    p.set_visible_mean(50.0);
    let g = ClusterGeometry::new(&p).unwrap();
    let m = p.nakagami_m;
    let dk = sensitivity(&p, &g, m, SensitivityTarget::ClusterShapeVsRange).unwrap();
    let dth = sensitivity(&p, &g, m, SensitivityTarget::ClusterScaleVsRange).unwrap();
    assert!(dk.at_boundary && dth.at_boundary);
    assert!(dk.value > 0.0 && dth.value < 0.0);
    assert!(sensitivity(&p, &g, m, SensitivityTarget::ShapeVsM(Region::Cluster)).is_err());

    // the flagged limit is the continuous extension of the interior derivative
    p.cluster_polar_angle_rad = 1e-4;
    p.set_visible_mean(50.0);
    let near = ClusterGeometry::new(&p).unwrap();
    let dk_near = sensitivity(&p, &near, m, SensitivityTarget::ClusterShapeVsRange).unwrap();
    let dth_near = sensitivity(&p, &near, m, SensitivityTarget::ClusterScaleVsRange).unwrap();
    assert!(!dk_near.at_boundary);
    assert!(rel_err(dk_near.value, dk.value) < 1e-3, "{} vs {}", dk_near.value, dk.value);
    assert!(rel_err(dth_near.value, dth.value) < 1e-3, "{} vs {}", dth_near.value, dth.value);
}
