//! Decodes frames with the hybrid decoder and reports which stage answered
//! and what each frame cost in cycles.

use polar_hybrid::channel::{add_awgn_with, llr_from_observation, modulate_bpsk, ChannelParams};
use polar_hybrid::{
    construct_frozen_set, encode, insert_info_bits, BpConfig, DecodeSource, HybridDecoder,
    LatencyParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> polar_hybrid::Result<()> {
    let code = construct_frozen_set(1024, 512, 0.5)?;
    let mut hybrid =
        HybridDecoder::new(&code, BpConfig::default(), LatencyParams::for_code(&code))?;
    let channel = ChannelParams::from_ebn0(2.5, code.rate())?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let max_iter = 60;

    let (mut from_bp, mut from_sc, mut errors, mut cycles) = (0, 0, 0, 0u64);
    for frame in 0..400 {
        let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        let u = insert_info_bits(&info, &code)?;
        let y = add_awgn_with(
            &modulate_bpsk(&encode(&u, &code)?),
            channel.sigma2,
            &mut rng,
        )?;
        let out = hybrid.decode(&llr_from_observation(&y, channel.sigma2)?, &code, max_iter)?;
        match out.source {
            DecodeSource::BpEarly => from_bp += 1,
            DecodeSource::ScFallback => from_sc += 1,
        }
        errors += usize::from(out.info_hat != info);
        cycles += out.cycles;
        if frame < 5 {
            println!(
                "frame {frame}: {:?} after {} iterations, {} cycles",
                out.source, out.iterations, out.cycles
            );
        }
    }
    println!("400 frames at 2.5 dB: {from_bp} from BP, {from_sc} from SC fallback");
    println!(
        "frame errors {errors}, mean cycles {:.1}",
        cycles as f64 / 400.0
    );
    Ok(())
}
