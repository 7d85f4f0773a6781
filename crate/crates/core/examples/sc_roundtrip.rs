//! Encodes random messages, sends them over BPSK/AWGN and decodes with SC.

use polar_hybrid::channel::{add_awgn, llr_from_observation, modulate_bpsk, ChannelParams};
use polar_hybrid::{construct_frozen_set, encode, extract_info_bits, insert_info_bits, ScDecoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> polar_hybrid::Result<()> {
    let code = construct_frozen_set(1024, 512, 0.5)?;
    let mut decoder = ScDecoder::new(&code);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let frames = 500;

    for ebn0 in [1.5, 2.5, 3.5] {
        let channel = ChannelParams::from_ebn0(ebn0, code.rate())?;
        let mut frame_errors = 0;
        for frame in 0..frames {
            let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
            let x = encode(&insert_info_bits(&info, &code)?, &code)?;
            let y = add_awgn(&modulate_bpsk(&x), channel.sigma2, frame)?;
            let u_hat = decoder.decode(&llr_from_observation(&y, channel.sigma2)?, &code)?;
            if extract_info_bits(&u_hat, &code)? != info {
                frame_errors += 1;
            }
        }
        println!("Eb/N0 {ebn0} dB: {frame_errors}/{frames} frame errors");
    }
    Ok(())
}
