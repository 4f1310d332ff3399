// temporary calibration probe; deleted before shipping
use std::time::Instant;

use rabipat::hilbert::{number, HilbertConfig};
use rabipat::models::*;
use rabipat::phases::{self, EffectiveModel};
use rabipat::spectra::*;

fn main() {
    // 1. exact arithmetic checks
    let kc = (1.0f64 * 100.0).sqrt() / 0.1 - 1.0;
    println!("k_c = {kc:.20} (== 99: {})", kc == 99.0);
    let r = 2f64.sqrt();
    let ratio = 200.0 / (2.0 * r).cosh();
    println!("200 sech(2sqrt2) = {ratio:.6}");
    let p = ParametricJCParams::from_squeeze(1.0, ratio, 0.1, r).unwrap();
    println!("g0 = {:.6} delta_c", phases::g_critical(&p));

    // 2. frame equivalence residuals and cutoffs
    for &rr in &[0.0, 0.5, r] {
        let dq = 200.0 / (2.0 * rr).cosh();
        let probe = ParametricJCParams::from_squeeze(1.0, dq, 0.0, rr).unwrap();
        let g0 = phases::g_critical(&probe);
        for &x in &[0.5, 0.9, 1.2] {
            let p = probe.with_g(x * g0).unwrap();
            let t = Instant::now();
            let pl = p;
            let lab = converge_cutoff(
                move |c| Ok(build_parametric_jc(&pl, c)),
                1.0,
                4,
                &CutoffPolicy::default(),
            )
            .unwrap();
            let ps = p;
            let sq = converge_cutoff(
                move |c| Ok(build_squeezed_frame(&ps, c)),
                1.0,
                4,
                &CutoffPolicy::default(),
            )
            .unwrap();
            let mut worst = 0.0f64;
            for (a, b) in lab.eigenvalues().iter().zip(sq.eigenvalues()) {
                worst = worst.max((a - b).abs());
            }
            println!(
                "r={rr:.3} x={x}: dev={worst:.3e}  N_lab={} N_sq={} ({:?})",
                lab.cutoff_used(),
                sq.cutoff_used(),
                t.elapsed()
            );
        }
    }

    // 3. dispersive vs squeezed-frame ground energy at g = 0.2 g0
    let g0 = phases::g_critical(&p);
    let pd = p.with_g(0.2 * g0).unwrap();
    let p1 = pd;
    let e_sq = converge_cutoff(
        move |c| Ok(build_squeezed_frame(&p1, c)),
        1.0,
        2,
        &CutoffPolicy::default(),
    )
    .unwrap();
    let p2 = pd;
    let e_disp = converge_cutoff(
        move |c| Ok(build_dispersive(&p2, c)),
        1.0,
        2,
        &CutoffPolicy::default(),
    )
    .unwrap();
    let (g1, _g2) = squeeze_couplings(&pd);
    println!(
        "dispersive dE0 = {:.3e}; scale g1^2 g^2/dq^2 = {:.3e}",
        (e_sq.ground_energy() - e_disp.ground_energy()).abs(),
        g1 * g1 * pd.g() * pd.g() / (pd.delta_q() * pd.delta_q())
    );

    // 4. gap collapse at 0.8/1.2 g0 (squeezed frame)
    for &x in &[0.8, 1.2] {
        let px = p.with_g(x * g0).unwrap();
        let pb = px;
        let t = Instant::now();
        let s = converge_cutoff(
            move |c| Ok(build_squeezed_frame(&pb, c)),
            1.0,
            2,
            &CutoffPolicy::default(),
        )
        .unwrap();
        println!(
            "x={x}: gap={:.3e} N={} conv={} ({:?})",
            s.gap(),
            s.cutoff_used(),
            s.converged(),
            t.elapsed()
        );
    }

    // 5. order parameter cross-check at frequency ratio 200, k=1, x=1.2
    let xi = 1.2 * 200.0f64.sqrt() / 2.0;
    let pa = AnisotropicRabiParams::new(1.0, 200.0, xi, xi).unwrap();
    let m = EffectiveModel::anisotropic(&pa);
    let alpha = phases::order_parameter_alpha(&m, 1.2);
    let pe = pa;
    let t = Instant::now();
    let ed = converge_cutoff(
        move |c| Ok(build_anisotropic_rabi(&pe, c)),
        1.0,
        2,
        &CutoffPolicy::default(),
    )
    .unwrap();
    let occ = number(&HilbertConfig::new(ed.cutoff_used()).unwrap())
        .expectation(ed.eigenvector(0))
        .unwrap()
        .re;
    println!(
        "alpha0^2={:.4} ED occ={:.4} rel={:.3}% N={} ({:?})",
        alpha * alpha,
        occ,
        100.0 * (alpha * alpha - occ).abs() / occ,
        ed.cutoff_used(),
        t.elapsed()
    );

    // 6. epsilon_np vs ED gap at frequency ratio 200, x = 0.5 (5% check)
    let xi05 = 0.5 * 200.0f64.sqrt() / 2.0;
    let pa5 = AnisotropicRabiParams::new(1.0, 200.0, xi05, xi05).unwrap();
    let m5 = EffectiveModel::anisotropic(&pa5);
    let pe5 = pa5;
    let ed5 = converge_cutoff(
        move |c| Ok(build_anisotropic_rabi(&pe5, c)),
        1.0,
        2,
        &CutoffPolicy::default(),
    )
    .unwrap();
    let eps = phases::excitation_normal(&m5, 0.5);
    println!(
        "eps_np={:.6} ED gap={:.6} rel={:.3}%",
        eps,
        ed5.gap(),
        100.0 * (eps - ed5.gap()).abs() / ed5.gap()
    );

    // 7. whole k-sweep with patterns, 151 points
    let base = AnisotropicRabiParams::new(1.0, 100.0, 0.1, 0.0).unwrap();
    let spec = SweepSpec {
        model: SweepModel::Anisotropic(base),
        primary: SweepAxis {
            coordinate: AxisCoordinate::KOverKc,
            min: 0.0,
            max: 1.5,
            points: 151,
        },
        secondary: None,
        observables: ObservableSet {
            levels: 4,
            patterns: true,
            second_derivatives: true,
        },
        cutoff: CutoffPolicy::default(),
        gap_floor: 1e-16,
        threads: 1,
    };
    let t = Instant::now();
    let table = run_sweep(&spec).unwrap();
    println!("151-point pattern sweep: {:?}", t.elapsed());
    let mut worst_e = 0.0f64;
    let mut worst_n = 0.0f64;
    let mut max_cut = 0;
    for pt in &table.points {
        let pat = pt.pattern.as_ref().unwrap();
        for i in 0..4 {
            let es: f64 = pat.energy_shares[i].iter().sum();
            worst_e = worst_e
                .max((es - (pt.energies[i] + pat.identity_shift)).abs() / (pt.energies[i].abs() + 1.0));
            let ns: f64 = pat.occupation_shares[i].iter().sum();
            worst_n = worst_n.max((ns - pt.occupations[i]).abs() / (pt.occupations[i] + 1.0));
        }
        max_cut = max_cut.max(pt.cutoff_used);
    }
    println!("attr residuals: e={worst_e:.3e} n={worst_n:.3e}, max cutoff {max_cut}");

    // gap positivity / normal-phase gap floor
    let mut min_gap_normal = f64::INFINITY;
    for pt in &table.points {
        if pt.primary <= 0.9 {
            min_gap_normal = min_gap_normal.min(pt.gap);
        }
        assert!(pt.gap >= 0.0);
    }
    println!("min gap for k/kc<=0.9: {min_gap_normal:.4}");

    // 8. epsilon limits near critical
    let mfig = EffectiveModel::parametric(&p);
    for d in [1e-3, 1e-4, 1e-5, 1e-6, 1e-7] {
        println!(
            "d={d:.0e}: eps_np={:.3e} eps_sp={:.3e}",
            phases::excitation_normal(&mfig, 1.0 - d),
            phases::excitation_superradiant(&mfig, 1.0 + d)
        );
    }

    // 9. d2 jump with smooth-region variation
    let h = 1e-3;
    let left = phases::d2_ground_energy(&mfig, 1.0 - h, h);
    let right = phases::d2_ground_energy(&mfig, 1.0 + h, h);
    let w_np = (phases::d2_ground_energy(&mfig, 0.80, h) - phases::d2_ground_energy(&mfig, 0.80 - 10.0 * h, h)).abs();
    let w_sp = (phases::d2_ground_energy(&mfig, 1.30, h) - phases::d2_ground_energy(&mfig, 1.30 + 10.0 * h, h)).abs();
    println!(
        "d2: left={left:.3} right={right:.3} |jump|={:.3} within={:.3e}",
        (left - right).abs(),
        w_np.max(w_sp)
    );

    // 10. E_G continuity
    let el = phases::ground_energy_normal(&mfig, 1.0);
    let er = phases::ground_energy_superradiant(&mfig, 1.0);
    println!("E_G continuity: {:.3e}", (el - er).abs());
}
