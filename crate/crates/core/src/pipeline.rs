//! Clock-level model of the row pipeline.
//!
//! Rows enter stage 1 one per clock, top row first, each tagged with its row
//! offset in a side register. Between stage `j` and stage `j + 1` a
//! multiplexer either passes the row word through or shifts it one lane toward
//! higher bin index (zero enters lane 0). The line-equation calculator drives
//! that choice from the row offset and the stage index. The word leaving stage
//! `j` is added into accumulator `j - 1` before the multiplexer acts, so
//! accumulator `k` sees every row at its cumulative shift for angle index `k`.
//!
//! Hardware built this way usually shifts left and feeds zeros in on the
//! right; that is the mirror image of the lane order used here.

use crate::approx::{total_shift, Octant, OctantSinogram};
use crate::error::{RadonError, Result};
use crate::image::Image;

/// Register widths for an `n`-sided image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    pub n: usize,
    pub pixel_bits: u32,
    /// Lanes per row word, one per output bin.
    pub lane_count: usize,
    /// Accumulator lane width: `pixel_bits + ceil(log2 n)`.
    pub acc_bits: u32,
}

impl PipelineConfig {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(RadonError::ImageTooSmall(n));
        }
        let pixel_bits = 8;
        let growth = usize::BITS - (n - 1).leading_zeros();
        Ok(Self {
            n,
            pixel_bits,
            lane_count: 2 * n - 1,
            acc_bits: pixel_bits + growth,
        })
    }

    /// Smallest lane value that no longer fits an accumulator lane.
    pub fn acc_limit(&self) -> u64 {
        1u64 << self.acc_bits
    }
}

/// Shift control bit of stage `j` for row offset `d`: 1 when the cumulative
/// shift grows between angle indices `j - 1` and `j`.
pub fn line_eq_calc(j: usize, d: usize, n: usize) -> Result<u8> {
    if j == 0 || j >= n {
        return Err(RadonError::IndexOutOfRange {
            name: "stage index",
            value: j,
            bound: n,
        });
    }
    let bit = total_shift(d, j, n)? - total_shift(d, j - 1, n)?;
    debug_assert!(bit <= 1);
    Ok(bit as u8)
}

/// A row word held in a stage register, with its side-register row offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSlot {
    pub row: usize,
    pub lanes: Vec<u8>,
}

/// Snapshot of every register at one clock.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineState {
    pub cycle: u64,
    /// Stage registers 1..=n, stored at index `j - 1`. `None` is an empty slot.
    pub stage_regs: Vec<Option<StageSlot>>,
    pub acc: Vec<Vec<u32>>,
    /// Clock at which each accumulator became complete.
    pub ready: Vec<Option<u64>>,
}

/// One multiplexer decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TraceEvent {
    pub cycle: u64,
    pub stage: usize,
    pub row: usize,
    pub shift_bit: u8,
}

pub type Trace = Vec<TraceEvent>;

#[derive(Debug, Clone)]
pub struct Simulator {
    cfg: PipelineConfig,
    image: Image,
    next_row: usize,
    rows_added: Vec<usize>,
    state: PipelineState,
    trace: Trace,
    peak_lane: u32,
    overflowed: bool,
}

impl Simulator {
    pub fn new(image: Image, cfg: PipelineConfig) -> Result<Self> {
        let n = cfg.n;
        if image.n() != n {
            return Err(RadonError::SizeMismatch {
                what: "pipeline config",
                expected: n,
                got: image.n(),
            });
        }
        Ok(Self {
            cfg,
            image,
            next_row: 0,
            rows_added: vec![0; n],
            state: PipelineState {
                cycle: 0,
                stage_regs: vec![None; n],
                acc: vec![vec![0; cfg.lane_count]; n],
                ready: vec![None; n],
            },
            trace: Vec::new(),
            peak_lane: 0,
            overflowed: false,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.cfg
    }

    pub fn state(&self) -> &PipelineState {
        &self.state
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    /// Largest accumulator lane value observed so far.
    pub fn peak_lane(&self) -> u32 {
        self.peak_lane
    }

    /// Whether any accumulator lane ever exceeded its width.
    pub fn overflowed(&self) -> bool {
        self.overflowed
    }

    pub fn is_finished(&self) -> bool {
        self.state.ready.iter().all(Option::is_some)
    }

    /// Advances one clock. Past completion only the cycle counter moves.
    #[allow(clippy::needless_range_loop)]
    pub fn step(&mut self) {
        let n = self.cfg.n;
        let clock = self.state.cycle + 1;
        let mut next: Vec<Option<StageSlot>> = vec![None; n];

        for j in 1..=n {
            let Some(mut slot) = self.state.stage_regs[j - 1].take() else {
                continue;
            };
            let k = j - 1;
            self.accumulate(k, &slot.lanes);
            self.rows_added[k] += 1;
            if self.rows_added[k] == n {
                self.state.ready[k] = Some(clock);
            }
            if j < n {
                let shift_bit =
                    line_eq_calc(j, slot.row, n).expect("stage and row indices stay in range");
                if shift_bit == 1 {
                    let dropped = slot.lanes.pop();
                    debug_assert_eq!(dropped, Some(0), "content shifted out of the word");
                    slot.lanes.insert(0, 0);
                }
                self.trace.push(TraceEvent {
                    cycle: clock,
                    stage: j,
                    row: slot.row,
                    shift_bit,
                });
                next[j] = Some(slot);
            }
        }

        if self.next_row < n {
            let mut lanes = vec![0u8; self.cfg.lane_count];
            lanes[..n].copy_from_slice(self.image.row(self.next_row));
            next[0] = Some(StageSlot {
                row: self.next_row,
                lanes,
            });
            self.next_row += 1;
        }

        self.state.stage_regs = next;
        self.state.cycle = clock;
    }

    // Fixed-width add: lanes wrap at `acc_bits` like the register would.
    fn accumulate(&mut self, k: usize, word: &[u8]) {
        let mask = (self.cfg.acc_limit() - 1) as u32;
        for (acc, &px) in self.state.acc[k].iter_mut().zip(word) {
            let sum = *acc + u32::from(px);
            if sum > mask {
                self.overflowed = true;
            }
            *acc = sum & mask;
            self.peak_lane = self.peak_lane.max(*acc);
        }
    }

    /// Accumulator contents in canonical bin order.
    pub fn sinogram(&self) -> OctantSinogram {
        OctantSinogram {
            n: self.cfg.n,
            octant: Octant::Deg0to45,
            rows: self
                .state
                .acc
                .iter()
                .map(|lanes| lanes.iter().map(|&v| u64::from(v)).collect())
                .collect(),
        }
    }
}

pub fn sim_new(img: Image, cfg: PipelineConfig) -> Result<Simulator> {
    Simulator::new(img, cfg)
}

/// Outcome of a full simulation run.
#[derive(Debug, Clone)]
pub struct SimRun {
    pub sinogram: OctantSinogram,
    pub trace: Trace,
    /// Completion clock of each angle index.
    pub ready: Vec<u64>,
    pub total_cycles: u64,
    pub peak_lane: u32,
    pub overflowed: bool,
    pub config: PipelineConfig,
}

/// Clocks the pipeline until every accumulator is complete.
pub fn sim_run(img: &Image) -> Result<SimRun> {
    let cfg = PipelineConfig::new(img.n())?;
    let mut sim = Simulator::new(img.clone(), cfg)?;
    while !sim.is_finished() {
        sim.step();
    }
    let ready: Vec<u64> = sim
        .state
        .ready
        .iter()
        .map(|r| r.expect("finished"))
        .collect();
    Ok(SimRun {
        sinogram: sim.sinogram(),
        total_cycles: sim.state.cycle,
        ready,
        peak_lane: sim.peak_lane,
        overflowed: sim.overflowed,
        trace: sim.trace,
        config: cfg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{shear_project_octant, ShiftTable};
    use proptest::prelude::*;

    fn sample() -> Image {
        Image::from_rows(&[[1u8, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap()
    }

    #[test]
    fn config_widths() {
        assert_eq!(PipelineConfig::new(2).unwrap().acc_bits, 9);
        assert_eq!(PipelineConfig::new(4).unwrap().acc_bits, 10);
        assert_eq!(PipelineConfig::new(6).unwrap().acc_bits, 11);
        assert_eq!(PipelineConfig::new(8).unwrap().acc_bits, 11);
        assert_eq!(PipelineConfig::new(9).unwrap().acc_bits, 12);
        for n in 2..200 {
            let cfg = PipelineConfig::new(n).unwrap();
            assert_eq!(cfg.lane_count, 2 * n - 1);
            assert!((n as u64) * 255 < cfg.acc_limit());
        }
        assert_eq!(PipelineConfig::new(1), Err(RadonError::ImageTooSmall(1)));
    }

    #[test]
    fn line_equation_bits() {
        for n in 2..20 {
            for j in 1..n {
                assert_eq!(line_eq_calc(j, 0, n).unwrap(), 0);
                assert_eq!(line_eq_calc(j, n - 1, n).unwrap(), 1);
            }
        }
        assert_eq!(line_eq_calc(1, 1, 3).unwrap(), 1);
        assert_eq!(line_eq_calc(2, 1, 3).unwrap(), 0);
        assert!(line_eq_calc(0, 1, 3).is_err());
        assert!(line_eq_calc(3, 1, 3).is_err());
        assert!(line_eq_calc(1, 3, 3).is_err());
    }

    #[test]
    fn new_state_is_empty() {
        let img = Image::zeros(4).unwrap();
        let sim = sim_new(img, PipelineConfig::new(4).unwrap()).unwrap();
        let state = sim.state();
        assert_eq!(state.cycle, 0);
        assert_eq!(state.stage_regs.len(), 4);
        assert!(state.stage_regs.iter().all(Option::is_none));
        assert_eq!(state.acc, vec![vec![0u32; 7]; 4]);
        assert!(state.ready.iter().all(Option::is_none));
    }

    #[test]
    fn config_must_match_image() {
        let img = Image::zeros(4).unwrap();
        assert!(matches!(
            sim_new(img, PipelineConfig::new(5).unwrap()),
            Err(RadonError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn three_by_three_run() {
        let run = sim_run(&sample()).unwrap();
        assert_eq!(
            run.sinogram.rows,
            vec![
                vec![12, 15, 18, 0, 0],
                vec![1, 13, 16, 15, 0],
                vec![1, 6, 15, 14, 9]
            ]
        );
        assert_eq!(run.total_cycles, 6);
        assert_eq!(run.ready, vec![4, 5, 6]);
        assert_eq!(run.trace.len(), 6);
        assert!(!run.overflowed);
    }

    // Enumerates when the last row (offset n-1) leaves each stage: it enters
    // stage 1 on clock n and leaves stage j on clock n + j.
    fn expected_ready(n: usize) -> Vec<u64> {
        let last_row_entry = n as u64;
        (1..=n as u64).map(|j| last_row_entry + j).collect()
    }

    #[test]
    fn latency_schedule() {
        for n in [2usize, 3, 8, 17] {
            let img = Image::from_fn(n, |r, c| (r * n + c) as u8).unwrap();
            let run = sim_run(&img).unwrap();
            let law: Vec<u64> = (0..n as u64).map(|k| n as u64 + 1 + k).collect();
            assert_eq!(run.ready, expected_ready(n));
            assert_eq!(run.ready, law);
            assert_eq!(run.total_cycles, 2 * n as u64);
            // Trace agrees: the last decision of the last row is at clock 2n - 1.
            let last = run
                .trace
                .iter()
                .filter(|e| e.row == n - 1)
                .map(|e| e.cycle)
                .max();
            assert_eq!(last, Some(2 * n as u64 - 1));
        }
    }

    #[test]
    fn zero_image_keeps_accumulators_zero() {
        let mut sim = sim_new(Image::zeros(5).unwrap(), PipelineConfig::new(5).unwrap()).unwrap();
        for _ in 0..12 {
            sim.step();
            assert!(sim.state().acc.iter().flatten().all(|&v| v == 0));
        }
    }

    #[test]
    fn stepping_past_completion_is_inert() {
        let mut sim = sim_new(sample(), PipelineConfig::new(3).unwrap()).unwrap();
        while !sim.is_finished() {
            sim.step();
        }
        let before = sim.state().clone();
        let trace_len = sim.trace().len();
        sim.step();
        sim.step();
        assert_eq!(sim.state().cycle, before.cycle + 2);
        assert_eq!(sim.state().acc, before.acc);
        assert_eq!(sim.state().ready, before.ready);
        assert_eq!(sim.trace().len(), trace_len);
    }

    #[test]
    fn ready_flags_never_change_once_set() {
        let mut sim = sim_new(sample(), PipelineConfig::new(3).unwrap()).unwrap();
        let mut seen: Vec<Option<u64>> = vec![None; 3];
        for _ in 0..10 {
            sim.step();
            for (k, r) in sim.state().ready.iter().enumerate() {
                if let Some(prev) = seen[k] {
                    assert_eq!(*r, Some(prev));
                }
                seen[k] = *r;
            }
        }
    }

    #[test]
    fn saturated_image_stays_in_width() {
        for n in [2usize, 4, 8, 16, 32, 64] {
            let img = Image::new(n, vec![255; n * n]).unwrap();
            let run = sim_run(&img).unwrap();
            assert!(!run.overflowed);
            assert!(u64::from(run.peak_lane) < run.config.acc_limit());
            assert_eq!(u64::from(run.peak_lane), 255 * n as u64);
        }
    }

    fn image_strategy() -> impl Strategy<Value = Image> {
        (2usize..=32).prop_flat_map(|n| {
            proptest::collection::vec(any::<u8>(), n * n)
                .prop_map(move |px| Image::new(n, px).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn matches_shear_projection(img in image_strategy()) {
            let n = img.n();
            let table = ShiftTable::new(n).unwrap();
            let run = sim_run(&img).unwrap();
            prop_assert!(!run.overflowed);
            for k in 0..n {
                prop_assert_eq!(&run.sinogram.rows[k], &shear_project_octant(&img, &table, k).unwrap());
            }
        }

        #[test]
        fn trace_is_complete_and_consistent(img in image_strategy()) {
            let n = img.n();
            let run = sim_run(&img).unwrap();
            prop_assert_eq!(run.trace.len(), n * (n - 1));
            let mut pairs: Vec<(usize, usize)> = run.trace.iter().map(|e| (e.stage, e.row)).collect();
            pairs.sort_unstable();
            pairs.dedup();
            prop_assert_eq!(pairs.len(), n * (n - 1));
            for e in &run.trace {
                prop_assert_eq!(e.shift_bit, line_eq_calc(e.stage, e.row, n).unwrap());
                prop_assert_eq!(e.cycle, (e.row + e.stage + 1) as u64);
            }
            let mut sorted = run.trace.clone();
            sorted.sort_by_key(|e| (e.cycle, e.stage));
            prop_assert_eq!(&sorted, &run.trace);
            let again = sim_run(&img).unwrap();
            prop_assert_eq!(again.trace, run.trace);
        }
    }
}
