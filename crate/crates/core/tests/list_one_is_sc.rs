use polar_scl::{
    construct_monte_carlo, encode, AwgnChannel, ConstructionParams, Exact, LlrArithmetic, MinSum, PolarCode,
    ScDecoder, SclConfig, SclDecoder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn agree<A: LlrArithmetic>(code: &PolarCode, arith: A, ebn0_db: f64, trials: usize) -> usize {
    let mut sc = ScDecoder::new(code.clone(), arith);
    let mut scl = SclDecoder::new(code.clone(), arith, SclConfig::new(1)).unwrap();
    let channel = AwgnChannel::new(ebn0_db, code.rate()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(51 + code.n() as u64);
    let mut errors = 0;
    for t in 0..trials {
        let data: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
        let llrs = channel.channel_llrs(&channel.transmit(&encode(code, &data).unwrap(), &mut rng));
        let a = sc.decode(&llrs).unwrap();
        let b = scl.decode(&llrs).unwrap().info_bits;
        assert_eq!(a, b, "trial {t}");
        errors += usize::from(a != data);
    }
    errors
}

#[test]
fn list_of_one_matches_sc_at_n8() {
    let code = PolarCode::new(3, vec![3, 5, 6, 7]).unwrap();
    assert!(agree(&code, Exact, 1.0, 10_000) > 0);
    assert!(agree(&code, MinSum, 1.0, 10_000) > 0);
}

#[test]
fn list_of_one_matches_sc_at_n1024() {
    let params = ConstructionParams {
        trials: 10_000,
        ..ConstructionParams::default()
    };
    let code = construct_monte_carlo(10, 512, &params).unwrap();
    assert!(agree(&code, Exact, 1.5, 10_000) > 0);
    assert!(agree(&code, MinSum, 1.5, 10_000) > 0);
}
