double hypot(double a, double b)
{
  return a*a + b*b;
}
