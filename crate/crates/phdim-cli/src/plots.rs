//! Gnuplot script emission. The CLI never renders images itself; it writes
//! the raw CSV next to a script that an external gnuplot can run.

/// Log-log scatter of a scaling series with its fitted lines.
pub fn dimension_plot(
    shape: &str,
    series_files: &[(usize, String)],
    fits: &[(usize, f64, f64)], // (hom_dim, intercept, alpha)
) -> String {
    let mut s = String::new();
    s.push_str("# gnuplot script; run as: gnuplot dimension_plot.gp\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set logscale xy\n");
    s.push_str("set xlabel 'n'\n");
    s.push_str("set ylabel 'total interval length'\n");
    s.push_str(&format!("set title 'scaling: {shape}'\n"));
    s.push_str("set key left top\n");
    s.push_str("set term pngcairo size 900,650\n");
    s.push_str("set output 'dimension_plot.png'\n");
    let mut parts = Vec::new();
    for (dim, file) in series_files {
        parts.push(format!(
            "'{file}' every ::1 using 2:5 title 'H{dim} samples' with points pt 7 ps 0.4"
        ));
    }
    for (dim, intercept, alpha) in fits {
        parts.push(format!(
            "exp({intercept}) * x**({alpha}) title 'H{dim} fit: slope {alpha:.4}' with lines"
        ));
    }
    s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    s
}

/// Step plots of a family of empirical CDFs.
pub fn cdf_plot(title: &str, cdf_files: &[(String, String)]) -> String {
    let mut s = String::new();
    s.push_str("# gnuplot script; run as: gnuplot cdf_plot.gp\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set xlabel 'interval length'\n");
    s.push_str("set ylabel 'cumulative probability'\n");
    s.push_str(&format!("set title '{title}'\n"));
    s.push_str("set key right bottom\n");
    s.push_str("set term pngcairo size 900,650\n");
    s.push_str("set output 'cdf_plot.png'\n");
    let parts: Vec<String> = cdf_files
        .iter()
        .map(|(file, label)| format!("'{file}' every ::1 using 1:2 title '{label}' with steps"))
        .collect();
    s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    s
}

/// Scatter plot of a sampled point cloud.
pub fn scatter_plot(shape: &str, cloud_files: &[String]) -> String {
    let mut s = String::new();
    s.push_str("# gnuplot script; run as: gnuplot sample_plot.gp\n");
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set title 'samples: {shape}'\n"));
    s.push_str("set size ratio -1\n");
    s.push_str("set term pngcairo size 800,800\n");
    s.push_str("set output 'sample_plot.png'\n");
    let parts: Vec<String> = cloud_files
        .iter()
        .map(|f| format!("'{f}' every ::1 using 1:2 notitle with dots"))
        .collect();
    s.push_str(&format!("plot {}\n", parts.join(", \\\n     ")));
    s
}
