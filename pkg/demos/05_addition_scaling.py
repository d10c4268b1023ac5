"""
Why carry-free codes matter: addition cost vs magnitude
=======================================================

Adding n-element linked lists (Peano-style numerals built from cons
cells) costs more the bigger the numbers get.  Adding residue-coded
integers is one elementwise multiply no matter the magnitude.  This
script times both and prints the shape of each curve.
"""

from phasorlisp import flatness_ratio, growth_exponent, run_benchmark, write_csv

magnitudes = (5, 10, 20, 50)
results = run_benchmark(magnitudes=magnitudes, reps=9)

print(f"{'encoding':>8} {'magnitude':>9} {'median_ns':>12}")
for r in results:
    print(f"{r.encoding:>8} {r.magnitude:>9} {r.median_ns:>12}")

# residue addition should be flat; list addition should grow
print()
print(f"rhc flatness ratio (max/min):  {flatness_ratio(results):.2f}")
print(f"list growth exponent (log-log): {growth_exponent(results):.2f}")

write_csv(results, "addition_scaling.csv")
print("wrote addition_scaling.csv")
