def water_age_stat(en):
    res = en.getComputedQualityTimeSeries()
    return min(min(row) for row in res.NodeQuality)

result = water_age_stat(en)
