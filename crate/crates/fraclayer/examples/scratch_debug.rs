// temporary diagnostic harness (removed before release)
use fraclayer::laplace::{talbot_invert_diag, TransformFn};
use fraclayer::specfun;

fn main() {
    for (x, want) in [
        (0.5_f64, 1.7724538509055160),
        (1.5, 0.88622692545275801),
        (10.3, 716430.68906237524),
        (33.3, 7.4875775965227066e35),
        (170.5, 5.5620924145599996e305),
        (-169.5, 5.6482208842233255e-306),
        (-5.5, 0.010912654781909863),
    ] {
        let got = specfun::gamma(x).unwrap();
        println!("gamma({x}): rel err {:.2e}", ((got - want) / want).abs());
    }

    println!("--- talbot: exact-error per M (value column is the 2M quadrature) ---");
    let cases: Vec<(&str, TransformFn, Box<dyn Fn(f64) -> f64>)> = vec![
        ("1/s", TransformFn::new(|s| s.inv()), Box::new(|_| 1.0)),
        (
            "1/(s+1)",
            TransformFn::new(|s| (s + 1.0).inv()),
            Box::new(|t: f64| (-t).exp()),
        ),
        (
            "s^-1.5",
            TransformFn::new(|s| s.powf(-1.5)),
            Box::new(|t: f64| 2.0 * (t / std::f64::consts::PI).sqrt()),
        ),
        (
            "(sqrt(s)+1)/(sqrt(s)(s+sqrt(s)+1))",
            TransformFn::new(|s| {
                let w = s.sqrt();
                (w + 1.0) / (w * (s + w + 1.0))
            }),
            Box::new(|_| f64::NAN),
        ),
    ];
    for (name, f, exact) in &cases {
        for &t in &[0.01, 1.0, 40.0, 1000.0] {
            print!("{name} t={t}: ");
            for m in [16usize, 32, 64, 128] {
                match talbot_invert_diag(f, t, m) {
                    Ok(d) => {
                        let e = exact(t);
                        if e.is_nan() {
                            print!("[d={:.1e}] ", d.refine_delta);
                        } else {
                            print!("[err={:.1e} d={:.1e}] ", ((d.value - e) / e).abs(), d.refine_delta);
                        }
                    }
                    Err(err) => print!("[{err}] "),
                }
            }
            println!();
        }
    }
}
