//! Displayed polynomials used as expected values by the identity suite.

pub const D: &str = "lambda^2 - 4*lambda*mu^2*rho^2*x^2 + 4*lambda*mu^2*rho^2*x - 4*lambda*mu^2*rho^2*y^2 \
     + 4*lambda*mu^2*rho^2*y - 2*lambda*mu^2*rho^2 - 2*lambda*rho^2 + 4*lambda*rho \
     - 2*lambda + 16*mu^4*rho^4*x^2*y^2 - 16*mu^4*rho^4*x^2*y + 4*mu^4*rho^4*x^2 \
     - 16*mu^4*rho^4*x*y^2 + 16*mu^4*rho^4*x*y - 4*mu^4*rho^4*x + 4*mu^4*rho^4*y^2 \
     - 4*mu^4*rho^4*y + mu^4*rho^4 - 8*mu^2*rho^4*x*y + 4*mu^2*rho^4*x + 4*mu^2*rho^4*y \
     - 2*mu^2*rho^4 + 16*mu^2*rho^3*x*y - 8*mu^2*rho^3*x - 8*mu^2*rho^3*y + 4*mu^2*rho^3 \
     - 8*mu^2*rho^2*x*y + 4*mu^2*rho^2*x + 4*mu^2*rho^2*y - 2*mu^2*rho^2 + rho^4 \
     - 4*rho^3 + 6*rho^2 - 4*rho + 1";

pub const DSTAR: &str = "16*lambda^2*mu^4*rho^4*x^2*y^2 - 16*lambda^2*mu^4*rho^4*x^2*y \
     + 4*lambda^2*mu^4*rho^4*x^2 - 16*lambda^2*mu^4*rho^4*x*y^2 \
     + 16*lambda^2*mu^4*rho^4*x*y - 4*lambda^2*mu^4*rho^4*x + 4*lambda^2*mu^4*rho^4*y^2 \
     - 4*lambda^2*mu^4*rho^4*y + lambda^2*mu^4*rho^4 - 8*lambda^2*mu^2*rho^4*x*y \
     + 4*lambda^2*mu^2*rho^4*x + 4*lambda^2*mu^2*rho^4*y - 2*lambda^2*mu^2*rho^4 \
     + 16*lambda^2*mu^2*rho^3*x*y - 8*lambda^2*mu^2*rho^3*x - 8*lambda^2*mu^2*rho^3*y \
     + 4*lambda^2*mu^2*rho^3 - 8*lambda^2*mu^2*rho^2*x*y + 4*lambda^2*mu^2*rho^2*x \
     + 4*lambda^2*mu^2*rho^2*y - 2*lambda^2*mu^2*rho^2 + lambda^2*rho^4 \
     - 4*lambda^2*rho^3 + 6*lambda^2*rho^2 - 4*lambda^2*rho + lambda^2 \
     - 4*lambda*mu^2*rho^2*x^2 + 4*lambda*mu^2*rho^2*x - 4*lambda*mu^2*rho^2*y^2 \
     + 4*lambda*mu^2*rho^2*y - 2*lambda*mu^2*rho^2 - 2*lambda*rho^2 + 4*lambda*rho \
     - 2*lambda + 1";

pub const T22: &str = "16*mu^4*rho^4*x^2*y^2 - 16*mu^4*rho^4*x^2*y + 4*mu^4*rho^4*x^2 - 16*mu^4*rho^4*x*y^2 \
     + 16*mu^4*rho^4*x*y - 4*mu^4*rho^4*x + 4*mu^4*rho^4*y^2 - 4*mu^4*rho^4*y \
     + mu^4*rho^4 - 8*mu^2*rho^4*x*y + 4*mu^2*rho^4*x + 4*mu^2*rho^4*y - 2*mu^2*rho^4 \
     + 16*mu^2*rho^3*x*y - 8*mu^2*rho^3*x - 8*mu^2*rho^3*y + 4*mu^2*rho^3 \
     - 8*mu^2*rho^2*x*y + 4*mu^2*rho^2*x + 4*mu^2*rho^2*y - 2*mu^2*rho^2 + rho^4 \
     - 4*rho^3 + 6*rho^2 - 4*rho + 2";

pub const T21: &str = "-8*mu^2*rho^2*x^2 + 8*mu^2*rho^2*x - 8*mu^2*rho^2*y^2 + 8*mu^2*rho^2*y \
     - 4*mu^2*rho^2 - 4*rho^2 + 8*rho - 4";

pub const T11: &str = "-16*mu^4*rho^4*x^2*y^2 + 16*mu^4*rho^4*x^2*y - 4*mu^4*rho^4*x^2 \
     + 16*mu^4*rho^4*x*y^2 - 16*mu^4*rho^4*x*y + 4*mu^4*rho^4*x - 4*mu^4*rho^4*y^2 \
     + 4*mu^4*rho^4*y - mu^4*rho^4 + 8*mu^2*rho^4*x*y - 4*mu^2*rho^4*x - 4*mu^2*rho^4*y \
     + 2*mu^2*rho^4 - 16*mu^2*rho^3*x*y + 8*mu^2*rho^3*x + 8*mu^2*rho^3*y - 4*mu^2*rho^3 \
     + 8*mu^2*rho^2*x*y - 4*mu^2*rho^2*x - 4*mu^2*rho^2*y + 2*mu^2*rho^2 - rho^4 \
     + 4*rho^3 - 6*rho^2 + 4*rho";

pub const T00: &str = "32*mu^4*rho^4*x^2*y^2 - 32*mu^4*rho^4*x^2*y + 8*mu^4*rho^4*x^2 - 32*mu^4*rho^4*x*y^2 \
     + 32*mu^4*rho^4*x*y - 8*mu^4*rho^4*x + 8*mu^4*rho^4*y^2 - 8*mu^4*rho^4*y \
     + 2*mu^4*rho^4 - 16*mu^2*rho^4*x*y + 8*mu^2*rho^4*x + 8*mu^2*rho^4*y - 4*mu^2*rho^4 \
     + 32*mu^2*rho^3*x*y - 16*mu^2*rho^3*x - 16*mu^2*rho^3*y + 8*mu^2*rho^3 \
     + 8*mu^2*rho^2*x^2 - 16*mu^2*rho^2*x*y + 8*mu^2*rho^2*y^2 + 2*rho^4 - 8*rho^3 \
     + 16*rho^2 - 16*rho + 8";

pub const C2: &str = "7573350625*x^2*y^2/32768 - 7573350625*x^2*y/32768 + 7484237025*x^2/131072 \
     - 7573350625*x*y^2/32768 + 15083260025*x*y/65536 - 927599475*x/16384 \
     + 7484237025*y^2/131072 - 927599475*y/16384 + 113567625/8192";

pub const C1: &str = "7573350625*x^2*y^2/32768 - 7573350625*x^2*y/32768 + 7573350625*x^2/131072 \
     - 7573350625*x*y^2/32768 + 15083260025*x*y/65536 - 938738675*x/16384 \
     + 7573350625*y^2/131072 - 938738675*y/16384 + 116342985/8192";

pub const C0: &str = "7573350625*x^2*y^2/32768 - 7573350625*x^2*y/32768 + 7662464225*x^2/131072 \
     - 7573350625*x*y^2/32768 + 15083260025*x*y/65536 - 949877875*x/16384 \
     + 7662464225*y^2/131072 - 949877875*y/16384 + 119183881/8192";

pub const P1_A: &str = "-5359375*x0^4/2097152 + 5359375*x0^3/1048576 + 2480625*x0^2*y0/2097152 \
     - 9279375*x0^2/2097152 - 2480625*x0*y0/2097152 + 129061*x0/65536 \
     - 4776975*y0^2/8388608 + 14175*y0/16384";

pub const P2_A: &str = "-4776975*x0^2/8388608 + 2480625*x0*y0^2/2097152 - 2480625*x0*y0/2097152 \
     + 14175*x0/16384 - 5359375*y0^4/2097152 + 5359375*y0^3/1048576 \
     - 9279375*y0^2/2097152 + 129061*y0/65536";

pub const P1_B: &str = "-25672375*x0^4/32768 + 25672375*x0^3/16384 + 2349675*x0^2*y0/16384 \
     - 28457175*x0^2/32768 - 2349675*x0*y0/16384 + 43877*x0/512 - 469935*y0^2/32768 \
     + 7965*y0/512";

pub const P2_B: &str = "-469935*x0^2/32768 + 2349675*x0*y0^2/16384 - 2349675*x0*y0/16384 + 7965*x0/512 \
     - 25672375*y0^4/32768 + 25672375*y0^3/16384 - 28457175*y0^2/32768 + 43877*y0/512";

pub const P1_SYM: &str = "-mu^3*rho^3*x0^4 + 2*mu^3*rho^3*x0^3 - mu^3*rho^3*x0^2 - 2*mu^2*rho^3*x0^2*y0 \
     + 2*mu^2*rho^3*x0*y0 + 2*mu^2*rho^2*x0^2*y0 - mu^2*rho^2*x0^2 - 2*mu^2*rho^2*x0*y0 \
     + mu^2*rho^2*x0 - mu*rho^3*y0^2 + 3*mu*rho^2*y0^2 - 2*mu*rho^2*y0 - 2*mu*rho*y0^2 \
     + 2*mu*rho*y0 + rho^2*x0 - 2*rho*x0 + x0";

pub const T2_AT_1_E0: &str = "2*rho^2*(mu - 1)*(mu + 1)*(rho*mu - rho + 2)*(rho*mu + rho - 2)";

pub const T1_AT_1_E0: &str = "-2*rho*(rho^2*mu^2 - rho^2 + 2*rho - 2)*(rho*mu^2 - rho + 2)";

pub const T0_AT_1_E0: &str = "2*(rho^2*mu^2 + 2*rho^2*mu + rho^2 - 2*rho*mu - 2*rho + 2)\
     *(rho^2*mu^2 - 2*rho^2*mu + rho^2 + 2*rho*mu - 2*rho + 2)";

pub const RES_G1_G1PP: &str = "-8*mu1^3*mu2^6*(2*mu1*mu2^2 - 9*mu1*mu2 + 27)";
