def pressure_stat(en):
    en.setLinkStatus(en.getLinkIndex("P5"), 0)
    res = en.getComputedHydraulicTimeSeries()
    return min(min(row) for row in res.Pressure)

result = pressure_stat(en)
