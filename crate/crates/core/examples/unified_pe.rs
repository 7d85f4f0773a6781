//! Runs SC and BP through the unified Type-I/Type-II blocks and checks they
//! match the dedicated node functions bit for bit.

use polar_hybrid::bp::{msg_type1, msg_type2};
use polar_hybrid::channel::{add_awgn, llr_from_observation, modulate_bpsk, ChannelParams};
use polar_hybrid::pe::{
    bp_pe_count, count_activations, schedule_modes, unified_type1, unified_type2, DecoderKind,
    PeConfig, PeMode, UnifiedBpKernel, UnifiedScKernel,
};
use polar_hybrid::sc::{f_node, g_node};
use polar_hybrid::{construct_frozen_set, encode, BpConfig, BpDecoder, ScDecoder};

fn main() -> polar_hybrid::Result<()> {
    let (a, b) = (-2.5, 1.75);
    println!(
        "f({a}, {b}) = {} = Type-I in SC mode {}",
        f_node(a, b),
        unified_type1(&PeConfig::sc_f(), a, b, 0.0)?
    );
    for u in [0, 1] {
        println!(
            "g({a}, {b}, {u}) = {} = Type-II in SC mode {}",
            g_node(a, b, u),
            unified_type2(&PeConfig::sc_g(u), a, b, 0.0)?
        );
    }
    println!(
        "BP mode: type1 {} / {}, type2 {} / {}",
        msg_type1(0.9375, a, b, 0.5),
        unified_type1(&PeConfig::bp_type1(0.9375), a, b, 0.5)?,
        msg_type2(0.9375, a, b, 0.5),
        unified_type2(&PeConfig::bp_type2(0.9375), a, b, 0.5)?
    );

    let code = construct_frozen_set(1024, 512, 0.5)?;
    let channel = ChannelParams::from_ebn0(2.0, code.rate())?;
    let x = encode(&vec![0; 1024], &code)?;
    let llr = llr_from_observation(
        &add_awgn(&modulate_bpsk(&x), channel.sigma2, 1)?,
        channel.sigma2,
    )?;

    let mut sc = ScDecoder::new(&code);
    let mut sc_kernel = UnifiedScKernel::default();
    assert_eq!(
        sc.decode_with(&mut sc_kernel, &llr, &code)?,
        sc.decode(&llr, &code)?
    );
    println!(
        "SC via unified blocks: identical output, {} Type-I and {} Type-II activations",
        sc_kernel.type1_activations, sc_kernel.type2_activations
    );

    let mut bp = BpDecoder::new(&code, BpConfig::default())?;
    let mut bp_kernel = UnifiedBpKernel::default();
    let unified = bp.decode_with(&mut bp_kernel, &llr, &code, 60, true)?;
    assert_eq!(unified, bp.decode(&llr, &code, 60)?);
    println!(
        "BP via unified blocks: identical output after {} iterations, {} Type-I activations",
        unified.iterations_used, bp_kernel.type1_activations
    );

    let plan = schedule_modes(DecoderKind::Bp, 1024)?;
    println!(
        "one BP iteration fires {} Type-I blocks on a {}-PE array",
        count_activations(&plan, PeMode::BpType1),
        bp_pe_count(1024)
    );
    Ok(())
}
