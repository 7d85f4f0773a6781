//! Shows how the G-matrix stopping check cuts BP iterations as SNR grows.

use polar_hybrid::channel::{add_awgn_with, llr_from_observation, modulate_bpsk, ChannelParams};
use polar_hybrid::{construct_frozen_set, encode, insert_info_bits, BpConfig, BpDecoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> polar_hybrid::Result<()> {
    let code = construct_frozen_set(1024, 512, 0.5)?;
    let mut bp = BpDecoder::new(&code, BpConfig::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (frames, max_iter) = (300, 60);

    println!("Eb/N0  mean iters  stopped early  frame errors");
    for ebn0 in [2.0, 3.0, 4.0, 5.0] {
        let channel = ChannelParams::from_ebn0(ebn0, code.rate())?;
        let (mut iters, mut early, mut errors) = (0, 0, 0);
        for _ in 0..frames {
            let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
            let u = insert_info_bits(&info, &code)?;
            let y = add_awgn_with(
                &modulate_bpsk(&encode(&u, &code)?),
                channel.sigma2,
                &mut rng,
            )?;
            let out = bp.decode(&llr_from_observation(&y, channel.sigma2)?, &code, max_iter)?;
            iters += out.iterations_used;
            early += usize::from(out.stopped_early);
            errors += usize::from(out.u_hat != u);
        }
        println!(
            "{ebn0:>4}   {:>10.2}  {early:>8}/{frames}  {errors:>12}",
            iters as f64 / frames as f64
        );
    }
    Ok(())
}
