/** Shared CSV fixtures; the PPT column covers body dimensions 15/35/63/80. */

export const RUN_HEADER_LINE =
  'family,dims,criterion,alpha,count,total,ratio,std_error,inconclusive,seed,samples';

export const PPT_DECAY_CSV = [
  RUN_HEADER_LINE,
  'general,2x2,ppt,,24244000,100000000,0.24244,0.00017,false,1,100000000',
  'general,2x3,ppt,,827630,31000000,0.02673,0.00013,false,1,31000000',
  'general,2x4,ppt,,30725,25000000,0.001229,0.00006,false,1,25000000',
  'general,3x3,ppt,,126960,1200000000,0.0001058,0.0000085,false,1,1200000000',
  '',
].join('\n');

export const RENYI_DIMS_CSV = [
  RUN_HEADER_LINE,
  'general,2x2,renyi,1,99527800,100000000,0.995278,0.000036,false,1,100000000',
  'general,2x2,renyi,inf,78464000,100000000,0.78464,0.00024,false,1,100000000',
  'general,2x3,renyi,1,30997179,31000000,0.999909,0.000018,false,1,31000000',
  'general,2x3,renyi,inf,26891260,31000000,0.86746,0.00066,false,1,31000000',
  'general,3x3,renyi,inf,1194336000,1200000000,0.99528,0.00035,false,1,1200000000',
  '',
].join('\n');

export const SWEEP_CSV = [
  'family,alpha,one_over_alpha,ratio,std_error',
  'bell-diagonal,1,1.0,0.958559,0.000052',
  'bell-diagonal,2,0.5,0.7,0.0004',
  'bell-diagonal,inf,0.0,0.49997,0.0001',
  'x-state,1,1.0,0.977187,0.000055',
  'x-state,2,0.5,0.75,0.0004',
  'x-state,inf,0.0,0.6469,0.00016',
  '',
].join('\n');
