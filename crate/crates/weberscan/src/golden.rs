//! Reference results embedded for self-tests. Every entry carries a
//! provenance string naming the published table or program output it was
//! transcribed from; values are stored verbatim.

/// Which part of the annihilator table a row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    /// the main table, `p <= 2 10^5 / N` without filter
    Main,
    /// the continuation listing solutions `p < 10 N` with `p = 1 mod N`
    SplitMuN,
}

/// One line of the annihilator table: the factors of Phi_N mod p
/// dividing the measure, coefficients ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    pub p: u64,
    pub factors: &'static [&'static [u64]],
    pub section: Section,
    /// flagged in the source as not a genuine solution
    pub spurious: bool,
}

impl TableRow {
    pub fn provenance(&self) -> String {
        let mut s = format!("annihilator table, N={} p={}", self.n, self.p);
        if self.section == Section::SplitMuN {
            s.push_str(", solutions p < 10N split in Q(mu_N)");
        }
        if self.spurious {
            s.push_str(", SPURIOUS (starred line)");
        }
        s
    }
}

pub const ANNIHILATOR_TABLE: &[TableRow] = &[
    TableRow { n: 2, p: 13, factors: &[&[1, 1]], section: Section::Main, spurious: false },
    TableRow { n: 2, p: 31, factors: &[&[1, 1]], section: Section::Main, spurious: false },
    TableRow { n: 3, p: 7, factors: &[&[5, 1]], section: Section::Main, spurious: false },
    TableRow { n: 3, p: 73, factors: &[&[9, 1]], section: Section::Main, spurious: false },
    TableRow { n: 4, p: 13, factors: &[&[5, 1]], section: Section::Main, spurious: false },
    TableRow { n: 4, p: 29, factors: &[&[12, 1]], section: Section::Main, spurious: false },
    TableRow { n: 4, p: 37, factors: &[&[31, 1]], section: Section::Main, spurious: false },
    TableRow { n: 5, p: 11, factors: &[&[7, 1], &[8, 1]], section: Section::Main, spurious: false },
    TableRow { n: 6, p: 7, factors: &[&[2, 1]], section: Section::Main, spurious: false },
    TableRow { n: 6, p: 13, factors: &[&[9, 1]], section: Section::Main, spurious: false },
    TableRow { n: 6, p: 43, factors: &[&[36, 1]], section: Section::Main, spurious: false },
    TableRow { n: 8, p: 3, factors: &[&[2, 1, 1]], section: Section::Main, spurious: false },
    TableRow { n: 8, p: 521, factors: &[&[206, 1]], section: Section::Main, spurious: false },
    TableRow { n: 10, p: 3, factors: &[&[1, 2, 1, 2, 1]], section: Section::Main, spurious: true },
    TableRow { n: 12, p: 13, factors: &[&[7, 1]], section: Section::Main, spurious: false },
    TableRow { n: 14, p: 113, factors: &[&[106, 1]], section: Section::Main, spurious: false },
    TableRow { n: 15, p: 31, factors: &[&[11, 1], &[22, 1]], section: Section::Main, spurious: false },
    TableRow { n: 15, p: 241, factors: &[&[81, 1]], section: Section::Main, spurious: false },
    TableRow { n: 15, p: 1291, factors: &[&[958, 1]], section: Section::Main, spurious: false },
    TableRow { n: 17, p: 239, factors: &[&[172, 1]], section: Section::Main, spurious: false },
    TableRow { n: 18, p: 37, factors: &[&[33, 1]], section: Section::Main, spurious: false },
    TableRow { n: 22, p: 397, factors: &[&[16, 1]], section: Section::Main, spurious: false },
    TableRow { n: 22, p: 2729, factors: &[&[1268, 1]], section: Section::Main, spurious: false },
    TableRow { n: 23, p: 47, factors: &[&[19, 1]], section: Section::Main, spurious: false },
    TableRow { n: 25, p: 101, factors: &[&[21, 1]], section: Section::Main, spurious: false },
    TableRow { n: 25, p: 1151, factors: &[&[744, 1]], section: Section::Main, spurious: false },
    TableRow { n: 25, p: 2251, factors: &[&[1033, 1]], section: Section::Main, spurious: false },
    TableRow { n: 27, p: 109, factors: &[&[20, 1]], section: Section::Main, spurious: false },
    TableRow { n: 28, p: 701, factors: &[&[338, 1]], section: Section::Main, spurious: false },
    TableRow { n: 29, p: 59, factors: &[&[56, 1]], section: Section::Main, spurious: false },
    TableRow { n: 30, p: 1831, factors: &[&[261, 1]], section: Section::Main, spurious: false },
    TableRow { n: 33, p: 397, factors: &[&[136, 1]], section: Section::Main, spurious: false },
    TableRow { n: 38, p: 2357, factors: &[&[659, 1]], section: Section::Main, spurious: false },
    TableRow { n: 39, p: 157, factors: &[&[44, 1]], section: Section::Main, spurious: false },
    TableRow { n: 40, p: 41, factors: &[&[22, 1], &[30, 1], &[35, 1]], section: Section::Main, spurious: false },
    TableRow { n: 43, p: 173, factors: &[&[41, 1]], section: Section::Main, spurious: false },
    TableRow { n: 45, p: 541, factors: &[&[336, 1]], section: Section::Main, spurious: false },
    TableRow { n: 47, p: 283, factors: &[&[27, 1]], section: Section::Main, spurious: false },
    TableRow { n: 48, p: 193, factors: &[&[28, 1]], section: Section::Main, spurious: false },
    TableRow { n: 50, p: 101, factors: &[&[88, 1]], section: Section::Main, spurious: false },
    TableRow { n: 50, p: 251, factors: &[&[123, 1]], section: Section::Main, spurious: false },
    TableRow { n: 50, p: 1201, factors: &[&[493, 1]], section: Section::Main, spurious: false },
    TableRow { n: 52, p: 53, factors: &[&[12, 1], &[21, 1], &[27, 1]], section: Section::Main, spurious: false },
    TableRow { n: 52, p: 157, factors: &[&[128, 1]], section: Section::Main, spurious: false },
    TableRow { n: 54, p: 163, factors: &[&[21, 1]], section: Section::Main, spurious: false },
    TableRow { n: 56, p: 13, factors: &[&[5, 5, 1]], section: Section::Main, spurious: false },
    TableRow { n: 60, p: 61, factors: &[&[43, 1]], section: Section::Main, spurious: false },
    TableRow { n: 63, p: 379, factors: &[&[302, 1]], section: Section::Main, spurious: false },
    TableRow { n: 64, p: 193, factors: &[&[160, 1]], section: Section::Main, spurious: false },
    TableRow { n: 66, p: 1321, factors: &[&[617, 1]], section: Section::Main, spurious: false },
    TableRow { n: 67, p: 269, factors: &[&[176, 1], &[208, 1]], section: Section::Main, spurious: false },
    TableRow { n: 69, p: 829, factors: &[&[532, 1]], section: Section::Main, spurious: false },
    TableRow { n: 70, p: 71, factors: &[&[40, 1]], section: Section::Main, spurious: false },
    TableRow { n: 70, p: 211, factors: &[&[76, 1]], section: Section::Main, spurious: false },
    TableRow { n: 72, p: 73, factors: &[&[28, 1]], section: Section::Main, spurious: false },
    TableRow { n: 80, p: 241, factors: &[&[124, 1]], section: Section::Main, spurious: false },
    TableRow { n: 81, p: 487, factors: &[&[287, 1]], section: Section::Main, spurious: false },
    TableRow { n: 83, p: 499, factors: &[&[312, 1]], section: Section::Main, spurious: false },
    TableRow { n: 84, p: 757, factors: &[&[685, 1]], section: Section::Main, spurious: false },
    TableRow { n: 86, p: 431, factors: &[&[145, 1]], section: Section::Main, spurious: false },
    TableRow { n: 87, p: 349, factors: &[&[157, 1]], section: Section::Main, spurious: false },
    TableRow { n: 87, p: 523, factors: &[&[62, 1]], section: Section::Main, spurious: false },
    TableRow { n: 88, p: 353, factors: &[&[17, 1]], section: Section::Main, spurious: false },
    TableRow { n: 93, p: 373, factors: &[&[307, 1]], section: Section::Main, spurious: false },
    TableRow { n: 95, p: 191, factors: &[&[132, 1], &[137, 1]], section: Section::Main, spurious: false },
    TableRow { n: 99, p: 991, factors: &[&[91, 1], &[818, 1]], section: Section::Main, spurious: false },
    TableRow { n: 100, p: 199, factors: &[&[1, 173, 1]], section: Section::Main, spurious: false },
    TableRow { n: 101, p: 607, factors: &[&[277, 1], &[514, 1]], section: Section::Main, spurious: false },
    TableRow { n: 102, p: 103, factors: &[&[83, 1], &[97, 1]], section: Section::Main, spurious: false },
    TableRow { n: 104, p: 937, factors: &[&[609, 1]], section: Section::Main, spurious: false },
    TableRow { n: 106, p: 107, factors: &[&[39, 1], &[61, 1]], section: Section::Main, spurious: false },
    TableRow { n: 107, p: 857, factors: &[&[263, 1]], section: Section::Main, spurious: false },
    TableRow { n: 108, p: 109, factors: &[&[24, 1]], section: Section::Main, spurious: false },
    TableRow { n: 111, p: 223, factors: &[&[176, 1]], section: Section::Main, spurious: false },
    TableRow { n: 115, p: 461, factors: &[&[87, 1], &[103, 1]], section: Section::Main, spurious: false },
    TableRow { n: 118, p: 709, factors: &[&[27, 1]], section: Section::Main, spurious: false },
    TableRow { n: 124, p: 5, factors: &[&[3, 2, 2, 1]], section: Section::Main, spurious: false },
    TableRow { n: 124, p: 373, factors: &[&[139, 1], &[340, 1]], section: Section::Main, spurious: false },
    TableRow { n: 126, p: 379, factors: &[&[165, 1]], section: Section::Main, spurious: false },
    TableRow { n: 128, p: 257, factors: &[&[113, 1]], section: Section::Main, spurious: false },
    TableRow { n: 128, p: 641, factors: &[&[287, 1]], section: Section::Main, spurious: false },
    TableRow { n: 129, p: 257, factors: &[&[1, 81, 1]], section: Section::Main, spurious: false },
    TableRow { n: 136, p: 137, factors: &[&[35, 1]], section: Section::Main, spurious: false },
    TableRow { n: 138, p: 139, factors: &[&[31, 1]], section: Section::Main, spurious: false },
    TableRow { n: 140, p: 29, factors: &[&[5, 3, 1]], section: Section::Main, spurious: false },
    TableRow { n: 144, p: 433, factors: &[&[292, 1]], section: Section::Main, spurious: false },
    TableRow { n: 153, p: 307, factors: &[&[178, 1]], section: Section::Main, spurious: false },
    TableRow { n: 155, p: 311, factors: &[&[203, 1]], section: Section::Main, spurious: false },
    TableRow { n: 156, p: 157, factors: &[&[80, 1]], section: Section::Main, spurious: false },
    TableRow { n: 172, p: 173, factors: &[&[143, 1]], section: Section::Main, spurious: false },
    TableRow { n: 174, p: 349, factors: &[&[16, 1]], section: Section::Main, spurious: false },
    TableRow { n: 178, p: 179, factors: &[&[129, 1]], section: Section::Main, spurious: false },
    TableRow { n: 190, p: 761, factors: &[&[94, 1]], section: Section::Main, spurious: false },
    TableRow { n: 191, p: 383, factors: &[&[315, 1], &[360, 1]], section: Section::Main, spurious: false },
    TableRow { n: 192, p: 193, factors: &[&[115, 1]], section: Section::Main, spurious: false },
    TableRow { n: 210, p: 211, factors: &[&[59, 1], &[154, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 215, p: 431, factors: &[&[74, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 215, p: 1721, factors: &[&[162, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 225, p: 1801, factors: &[&[1536, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 226, p: 227, factors: &[&[160, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 230, p: 691, factors: &[&[345, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 230, p: 1381, factors: &[&[144, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 234, p: 1171, factors: &[&[988, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 236, p: 1181, factors: &[&[939, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 240, p: 241, factors: &[&[110, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 242, p: 2179, factors: &[&[1976, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 249, p: 499, factors: &[&[242, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 261, p: 2089, factors: &[&[1080, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 265, p: 1061, factors: &[&[919, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 276, p: 277, factors: &[&[272, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 281, p: 563, factors: &[&[551, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 284, p: 2557, factors: &[&[1876, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 288, p: 1153, factors: &[&[428, 1], &[577, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 290, p: 1451, factors: &[&[135, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 292, p: 877, factors: &[&[405, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 293, p: 587, factors: &[&[323, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 296, p: 593, factors: &[&[447, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 296, p: 1481, factors: &[&[444, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 303, p: 607, factors: &[&[59, 1], &[564, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 306, p: 307, factors: &[&[7, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 306, p: 919, factors: &[&[81, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 307, p: 1229, factors: &[&[121, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 309, p: 619, factors: &[&[32, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 315, p: 631, factors: &[&[346, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 321, p: 643, factors: &[&[520, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 324, p: 2269, factors: &[&[1878, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 324, p: 2593, factors: &[&[1526, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 328, p: 2953, factors: &[&[2160, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 330, p: 331, factors: &[&[46, 1], &[110, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 335, p: 2011, factors: &[&[919, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 340, p: 1021, factors: &[&[417, 1], &[993, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 340, p: 2381, factors: &[&[1143, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 344, p: 1721, factors: &[&[939, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 345, p: 1381, factors: &[&[502, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 346, p: 2423, factors: &[&[2301, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 348, p: 349, factors: &[&[132, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 352, p: 353, factors: &[&[238, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 358, p: 359, factors: &[&[111, 1], &[240, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 362, p: 1087, factors: &[&[172, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 363, p: 1453, factors: &[&[1416, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 363, p: 2179, factors: &[&[18, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 368, p: 3313, factors: &[&[2536, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 375, p: 751, factors: &[&[335, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 382, p: 383, factors: &[&[23, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 386, p: 1931, factors: &[&[1315, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 388, p: 389, factors: &[&[233, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 388, p: 1553, factors: &[&[421, 1], &[464, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 395, p: 2371, factors: &[&[2137, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 400, p: 401, factors: &[&[294, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 401, p: 3209, factors: &[&[154, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 401, p: 4813, factors: &[&[3529, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 405, p: 811, factors: &[&[645, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 407, p: 3257, factors: &[&[894, 1], &[2268, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 408, p: 409, factors: &[&[370, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 412, p: 1237, factors: &[&[387, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 420, p: 421, factors: &[&[367, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 422, p: 2111, factors: &[&[615, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 427, p: 1709, factors: &[&[922, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 428, p: 857, factors: &[&[31, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 429, p: 3433, factors: &[&[702, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 430, p: 1291, factors: &[&[1091, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 431, p: 863, factors: &[&[406, 1], &[754, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 432, p: 3889, factors: &[&[2110, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 442, p: 443, factors: &[&[325, 1]], section: Section::SplitMuN, spurious: false },
    TableRow { n: 443, p: 887, factors: &[&[226, 1]], section: Section::SplitMuN, spurious: false },
];

/// A pair (N, p) with p totally split in Q(N) and a single detected
/// annihilator `x + root`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorollaryRow {
    pub n: u64,
    pub p: u64,
    pub root: u64,
    pub provenance: &'static str,
}

pub const COROLLARY_LIST: &[CorollaryRow] = &[
    CorollaryRow { n: 2, p: 31, root: 1, provenance: "corollary list, N=2 p=31 (1,31)*x+(1,31)" },
    CorollaryRow { n: 2, p: 1546463, root: 1, provenance: "corollary list, N=2 p=1546463" },
    CorollaryRow { n: 256, p: 18433, root: 9723, provenance: "corollary list, N=2^8 p=18433 (1,18433)*x+(9723,18433)" },
    CorollaryRow { n: 1024, p: 114689, root: 66688, provenance: "corollary list, N=2^10 p=114689" },
    CorollaryRow { n: 3, p: 73, root: 9, provenance: "corollary list, N=3 p=73" },
    CorollaryRow { n: 81, p: 487, root: 287, provenance: "corollary list, N=3^4 p=487" },
    CorollaryRow { n: 81, p: 238627, root: 106366, provenance: "corollary list, N=3^4 p=238627" },
    CorollaryRow { n: 25, p: 2251, root: 1033, provenance: "corollary list, N=5^2 p=2251" },
];

/// Regulator test output: F_p-rank of the unit logarithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegulatorRow {
    pub n: u64,
    pub p: u64,
    pub rank: usize,
    pub provenance: &'static str,
}

pub const REGULATOR_ROWS: &[RegulatorRow] = &[
    RegulatorRow { n: 3, p: 7, rank: 1, provenance: "regulator test output, N=3 p=7 rk(M)=1" },
    RegulatorRow { n: 3, p: 73, rank: 1, provenance: "regulator test output, N=3 p=73 rk(M)=1" },
    RegulatorRow { n: 5, p: 11, rank: 2, provenance: "regulator test output, N=5 p=11 rk(M)=2" },
    RegulatorRow { n: 17, p: 239, rank: 15, provenance: "regulator test output, N=17 p=239 rk(M)=15" },
    RegulatorRow { n: 23, p: 47, rank: 21, provenance: "regulator test output, N=23 p=47 rk(M)=21" },
    RegulatorRow { n: 29, p: 59, rank: 27, provenance: "regulator test output, N=29 p=59 rk(M)=27" },
    RegulatorRow { n: 2, p: 13, rank: 0, provenance: "regulator test output, N=2 p=13 rk(M)=0" },
    RegulatorRow { n: 2, p: 31, rank: 0, provenance: "regulator test output, N=2 p=31 rk(M)=0" },
    RegulatorRow { n: 4, p: 13, rank: 1, provenance: "regulator test output, N=4 p=13 rk(M)=1" },
    RegulatorRow { n: 4, p: 29, rank: 2, provenance: "regulator test output, N=4 p=29 rk(M)=2" },
    RegulatorRow { n: 4, p: 37, rank: 2, provenance: "regulator test output, N=4 p=37 rk(M)=2" },
    RegulatorRow { n: 8, p: 521, rank: 6, provenance: "regulator test output, N=8 p=521 rk(M)=6" },
];

/// Normic-symbol matrix ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusRow {
    pub n: u64,
    pub p: u64,
    pub rank: usize,
    /// expected to take minutes in the reference implementation
    pub long: bool,
    pub provenance: &'static str,
}

pub const GENUS_ROWS: &[GenusRow] = &[
    GenusRow { n: 2, p: 31, rank: 0, long: false, provenance: "normic symbols output, N=2 p=31 rk(M)=0" },
    GenusRow { n: 3, p: 73, rank: 1, long: false, provenance: "normic symbols output, N=3 p=73 rk(M)=1" },
    GenusRow { n: 25, p: 2251, rank: 23, long: false, provenance: "normic symbols output, N=5^2 p=2251 rk(M)=23" },
    GenusRow { n: 2, p: 1546463, rank: 0, long: false, provenance: "normic symbols output, N=2 p=1546463 rk(M)=0" },
    GenusRow { n: 81, p: 487, rank: 79, long: true, provenance: "normic symbols output, N=3^4 p=487 rk(M)=79" },
];

/// Table rows for a given (N, p), spurious ones included.
pub fn lookup(n: u64, p: u64) -> Option<&'static TableRow> {
    ANNIHILATOR_TABLE.iter().find(|r| r.n == n && r.p == p)
}

/// Rows of the main table inside the scan window `N in [nmin, nmax]`,
/// `p <= budget / N`, spurious ones excluded.
pub fn table_window(nmin: u64, nmax: u64, budget: u64) -> Vec<&'static TableRow> {
    ANNIHILATOR_TABLE
        .iter()
        .filter(|r| r.section == Section::Main && !r.spurious)
        .filter(|r| (nmin..=nmax).contains(&r.n) && r.p <= budget / r.n)
        .collect()
}

pub fn genus_lookup(n: u64, p: u64) -> Option<&'static GenusRow> {
    GENUS_ROWS.iter().find(|r| r.n == n && r.p == p)
}

/// Outcome of one self-test item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

fn factor_arrays(n: u64, p: u64, exec: &crate::Exec) -> crate::Result<Vec<Vec<u64>>> {
    use crate::stickelberger::{scan::torsion_pair, MeasureMethod};
    let rep = torsion_pair(n, p, None, MeasureMethod::Auto, exec)?;
    Ok(crate::record::factors_to_arrays(&rep.factors))
}

fn expected(row: &TableRow) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = row.factors.iter().map(|f| f.to_vec()).collect();
    v.sort();
    v
}

/// Recompute the embedded results. `long` adds the N = 81 genus case and
/// the N = 1024 torsion case.
pub fn selftest(long: bool, exec: &crate::Exec) -> Vec<Check> {
    use crate::genus::{genus_matrix, regulator_rank, unit_system, MatrixMode};
    use crate::layers::LayerSpec;

    let mut out = Vec::new();
    for row in ANNIHILATOR_TABLE {
        let got = factor_arrays(row.n, row.p, exec);
        let item = match (&got, row.spurious) {
            (Ok(f), false) => {
                let mut f = f.clone();
                f.sort();
                check(row.provenance(), f == expected(row), format!("{f:?}"))
            }
            (Ok(f), true) => check(row.provenance(), f.is_empty(), format!("{f:?}")),
            (Err(e), _) => check(row.provenance(), false, e.to_string()),
        };
        out.push(item);
    }
    for row in COROLLARY_LIST {
        if row.n == 1024 && !long {
            continue;
        }
        let got = factor_arrays(row.n, row.p, exec);
        let pass = matches!(&got, Ok(f) if f == &vec![vec![row.root, 1]]);
        out.push(check(row.provenance, pass, format!("{got:?}")));
    }
    for row in REGULATOR_ROWS {
        let got = LayerSpec::new(row.n).and_then(|l| regulator_rank(&l, row.p));
        out.push(check(row.provenance, matches!(got, Ok(r) if r == row.rank), format!("{got:?}")));
    }
    for row in GENUS_ROWS {
        if row.long && !long {
            continue;
        }
        let got = LayerSpec::new(row.n)
            .and_then(|l| unit_system(&l, row.p))
            .and_then(|us| genus_matrix(&us, MatrixMode::Circulant, exec))
            .map(|m| m.rank);
        out.push(check(row.provenance, matches!(got, Ok(r) if r == row.rank), format!("{got:?}")));
    }
    out
}
