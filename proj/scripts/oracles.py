"""Reference values frozen into the C++ tests (mpmath, independent formulas)."""
from mpmath import mp, mpf, mpc, log, zeta, gamma, pi, euler, diff, taylor, digamma, binomial, bernoulli, loggamma, factorial
mp.dps = 80
def logxi(s):
    z = mpf(1) if s == 1 else (s-1)*zeta(s)
    return log(s/2) - s/2*log(pi) + loggamma(s/2) + log(z)
print("lambda_n via d^n/ds^n [s^(n-1) log xi(s)] / (n-1)!")
for n in [1,2,3,5,10,20]:
    v = diff(lambda s: s**(n-1)*logxi(s), 1, n) / factorial(n-1)
    print(n, mp.nstr(v, 40))
print("eta_j: log(s zeta(1+s)) = -sum eta_{n-1} s^n / n")
c = taylor(lambda s: log(s*zeta(1+s)) if s != 0 else mpf(0), 0, 8, method='quad', radius=mpf('0.5'))
for n in range(1,9):
    print(n-1, mp.nstr(-n*c[n], 40))
print("zeta"); [print(j, mp.nstr(zeta(j),50)) for j in [3,5,7,25]]
print("digamma", mp.nstr(digamma(mpf(100)+mpf(1)/2),40), mp.nstr(digamma(mpf(1)/2),40))
def sbar(n): return 1 - n*(log(4*pi)+euler)/2 + sum(binomial(n,j)*(-1)**j*(1-mpf(2)**-j)*zeta(j) for j in range(2,n+1))
mp.dps=150
print("sbar100", mp.nstr(sbar(100),50)); print("sbar10", mp.nstr(sbar(10),40))
mp.dps=40
w = (mpc(2,0.2)+0.5j)/(mpc(2,0.2)-0.5j)
for n in [1,10,20,300]: print("osc", n, mp.nstr(-2*(w**n).real, 25))
print("asym log 1000", mp.nstr(500*(log(1000)-1+euler-log(2*pi)),25))
print("asym psi 100", mp.nstr(2*pi*100*(2/(8*pi)*(digamma(100.5)-1+euler) - log(2*pi)/(4*pi)),25))
