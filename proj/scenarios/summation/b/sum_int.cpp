int sum_int(int* x, int n)
{
  return sum(x, n);
}
