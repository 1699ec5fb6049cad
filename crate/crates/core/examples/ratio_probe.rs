use morrey_core::testbank::random_smooth;
use morrey_core::*;

fn main() {
    let domain = GridBox::new(vec![-1.0], vec![1.0]).unwrap();
    let params = SpaceParams::new(0.5, 1.0, 2.0, 2.0, 1).unwrap();
    let spec = QuadratureSpec {
        t_min: 0.02,
        t_max: 1.0,
        t_count: 12,
        h_per_axis: 12,
        sup_levels: (-2, 6),
    };
    for seed in 0..10u64 {
        let f = random_smooth(seed, 1, &domain, 4);
        let mut ratios = Vec::new();
        for n in [128usize, 256] {
            let g = sample(&*f, &domain, &[n]).unwrap();
            let diff = besov_morrey_norm(&g, &params, 1.0, 1, &spec).unwrap().total;
            let fg = FreqGrid::for_grid(&g, 2.0).unwrap();
            let part = build_partition(max_bands(&fg), &fg).unwrap();
            let spectral = besov_morrey_norm_lp(&g, &params, &part, &spec).unwrap().total;
            ratios.push(spectral / diff);
        }
        println!("seed {seed}: n128 ratio {:.6}  n256 ratio {:.6}  refine change {:.4}",
            ratios[0], ratios[1], ratios[1] / ratios[0]);
    }
}
