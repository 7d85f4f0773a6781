//! Builds a polar code from the Bhattacharyya recursion and round-trips its
//! frozen-mask file.

use polar_hybrid::code::{bhattacharyya_profile, construct_frozen_set, CodeSpec, DEFAULT_Z0};

fn main() -> polar_hybrid::Result<()> {
    let small = construct_frozen_set(8, 4, DEFAULT_Z0)?;
    println!("(8,4) reliability profile:");
    for (i, z) in bhattacharyya_profile(8, DEFAULT_Z0).iter().enumerate() {
        let role = if small.is_frozen(i) { "frozen" } else { "info" };
        println!("  u[{i}]  Z = {z:.4}  {role}");
    }
    print!("mask file:\n{}", small.to_mask_string());

    let code = construct_frozen_set(1024, 512, DEFAULT_Z0)?;
    let dir = std::env::temp_dir().join("polar-hybrid-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("frozen_1024_512.txt");
    code.write_mask_file(&path)?;
    let back = CodeSpec::read_mask_file(&path)?;
    assert_eq!(back.frozen(), code.frozen());
    let first: Vec<usize> = code.info_positions().take(8).collect();
    println!(
        "(1024,512): rate {}, first information positions {first:?}, mask written to {}",
        code.rate(),
        path.display()
    );
    Ok(())
}
