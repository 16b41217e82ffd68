double sum_double(double * x, int n)
{
  return sum(x, x+n, plus<double>(), 0.0);
}
