//! Tab-separated plot data: observed points followed by a dense fitted
//! curve, consumable directly by gnuplot and friends.

/// Number of dense curve samples appended after the observed rows.
pub const CURVE_SAMPLES: usize = 200;

/// Builds the plot file contents: a comment header, one row per observed
/// point, then [`CURVE_SAMPLES`] rows spanning the observed x range. Dense
/// rows carry `nan` in the observed column.
pub fn plot_tsv(observed: &[(f64, f64)], predict: impl Fn(f64) -> f64) -> String {
    let mut out = String::from("# x\tobserved_p\tfitted_p\n");
    for &(x, p) in observed {
        out.push_str(&format!("{x}\t{p}\t{}\n", predict(x)));
    }
    let x0 = observed[0].0;
    let x1 = observed[observed.len() - 1].0;
    let step = (x1 - x0) / (CURVE_SAMPLES - 1) as f64;
    for j in 0..CURVE_SAMPLES {
        let x = x0 + step * j as f64;
        out.push_str(&format!("{x}\tnan\t{}\n", predict(x)));
    }
    out
}
