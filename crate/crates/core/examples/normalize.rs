//! Normalization of Fuchsian data `(M, b)` to a problem on the real line.

use bethe_schubert::schubert::{normalize_fuchsian_data, FuchsianData};
use bethe_schubert::verify::cli::problem_file_of;

fn run(label: &str, json: &str) -> bethe_schubert::Result<()> {
    let data: FuchsianData = serde_json::from_str(json).expect("valid data");
    let out = normalize_fuchsian_data(&data)?;
    println!("{label}");
    for line in &out.transcript {
        println!("  · {line}");
    }
    println!("  shifts {:?}", out.shifts);
    match (&out.spec, &out.empty_reason) {
        (Some(spec), _) => println!("  problem {}", serde_json::to_string(&problem_file_of(spec)).unwrap()),
        (None, Some(why)) => println!("  no operators: {why}"),
        (None, None) => println!("  no operators"),
    }
    Ok(())
}

fn main() -> bethe_schubert::Result<()> {
    run("already normalized", r#"{ "N": 2, "M": [[-1, -2], [1, 0], [1, 0], [1, 0]], "points": ["inf", "0", "1", "-1"] }"#)?;
    // the same data with shifted local exponents at a finite point
    run("shifted at 0", r#"{ "N": 2, "M": [[0, -1], [0, -1], [1, 0], [1, 0]], "points": ["inf", "0", "1", "-1"] }"#)?;
    // four points on the unit circle
    run("unit circle", r#"{ "N": 2, "M": [[-1, -2], [1, 0], [1, 0], [1, 0]], "points": ["-1", "1", "i", "-i"] }"#)?;
    Ok(())
}
