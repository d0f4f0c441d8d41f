def pressure_stat(en):
    res = en.getComputedHydraulicTimeSeries()
    return min(min(row) for row in res.Pressure)

result = pressure_stat(en)
